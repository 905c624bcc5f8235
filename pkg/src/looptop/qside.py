"""The combinatorial side: the supertrace functional on wedge words.

For a word ``theta_N ^ ... ^ theta_1`` with ``theta_a = E_{j_a, k_a}`` the
coefficient relative to the reference frame is

    2^(-N/2) str( H * sum_sigma sgn(sigma) I(k_sigma) e_{j_sigma(N)} ... e_{j_sigma(1)} )

where ``H`` is the spinor holonomy and ``I(k_sigma)`` the simplex integral
of ``exp(2 pi i sum_a k_sigma(a) tau_a)``.  The oracle evaluates this sum
literally; the fast path uses that the sum factorizes over axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .clifford import CliffordElement, blade_product, cl_mul, supertrace
from .exactnum import LaurentU, laurent_to_complex
from .holonomy import spinor_holonomy
from .simplex import MAX_ORACLE_N, SimplexSizeError, _iterated, j_closed
from .topdegree import ReferenceFrame, WedgeWord

PARITY_TOL = 1e-12


def _times_and_labels(word: WedgeWord) -> tuple[list[int], list[int]]:
    """Axes and frequencies indexed by time slot ``a = 1..N`` (0-based lists)."""
    rev = word.factors[::-1]
    return [f.axis for f in rev], [f.k for f in rev]


def _frame_rotor(frame: ReferenceFrame) -> CliffordElement:
    return spinor_holonomy(frame.model) * float(frame.sign)


def q_coefficient_oracle(frame: ReferenceFrame, word: WedgeWord) -> complex:
    """Literal permutation sum with exact simplex integrals and Clifford products."""
    model = frame.model
    word.check(model)
    big_n = len(word)
    if big_n > MAX_ORACLE_N:
        raise SimplexSizeError(f"oracle limited to N <= {MAX_ORACLE_N}, got {big_n}")
    axes, ks = _times_and_labels(word)
    # blade mask -> exact coefficient
    acc: dict[int, dict[int, Fraction]] = {}

    def descend(prefix: tuple[int, ...], unused: list[int], sign: int, mask: int) -> None:
        if not unused:
            bucket = acc.setdefault(mask, {})
            for poly in _iterated(prefix).values():
                for p, c in enumerate(poly):
                    if c:
                        bucket[big_n - p] = bucket.get(big_n - p, 0) + sign * c
            return
        for pos, label in enumerate(unused):
            # the label at the next time slot multiplies the monomial from the left
            s, new_mask = blade_product(1 << (axes[label] - 1), mask)
            rest = unused[:pos] + unused[pos + 1:]
            descend(prefix + (ks[label],), rest, (-sign if pos & 1 else sign) * s, new_mask)

    descend((), list(range(big_n)), 1, 0)
    summed = CliffordElement(model.n, {m: laurent_to_complex(LaurentU(c)) for m, c in acc.items()})
    value = supertrace(cl_mul(_frame_rotor(frame), summed)) * 2 ** (-big_n / 2)
    return complex(word.weight * value)


@dataclass
class QDetail:
    value: complex
    sort_sign: int = 1
    axis_counts: dict[int, int] = field(default_factory=dict)
    axis_j: dict[int, complex] = field(default_factory=dict)
    plane_tops: dict[int, complex] = field(default_factory=dict)
    kernel_tops: dict[int, complex] = field(default_factory=dict)

    def to_dict(self) -> dict:
        pair = lambda z: [complex(z).real, complex(z).imag]  # noqa: E731
        return {
            "value": pair(self.value),
            "sort_sign": self.sort_sign,
            "axis_counts": {str(j): c for j, c in self.axis_counts.items()},
            "axis_J": {str(j): pair(v) for j, v in self.axis_j.items()},
            "plane_tops": {str(j): pair(v) for j, v in self.plane_tops.items()},
            "kernel_tops": {str(j): pair(v) for j, v in self.kernel_tops.items()},
        }


def _generator_power(n_j: int) -> int:
    # e^(n) with e^2 = -1: (-1)^(n // 2) e^(n mod 2)
    return -1 if (n_j // 2) % 2 else 1


def q_coefficient_detail(frame: ReferenceFrame, word: WedgeWord) -> QDetail:
    """Per-axis factorization.

    Sorting the Clifford monomial into axis blocks (largest axis leftmost) costs
    the sign of the cross-axis inversions; the shuffle identity then splits the
    permutation sum into one simplex integral ``J`` per axis.  Per plane the
    top coefficient of ``(c + s e_{2j-1} e_{2j}) e_{2j}^{N_{2j}} e_{2j-1}^{N_{2j-1}}``
    is ``-c`` (both counts odd), ``s`` (both even) or 0, times ``J_{2j-1} J_{2j}``
    and the signs of the generator powers; per kernel axis it is ``+-J_j`` if the
    count is odd and 0 otherwise.
    """
    model = frame.model
    word.check(model)
    big_n = len(word)
    axes, ks = _times_and_labels(word)
    sort_sign = 1
    for a in range(big_n):
        for b in range(a + 1, big_n):
            if axes[a] > axes[b]:
                sort_sign = -sort_sign
    counts = {j: axes.count(j) for j in range(1, model.n + 1)}
    axis_j = {j: laurent_to_complex(j_closed([ks[a] for a in range(big_n) if axes[a] == j])) for j in counts}
    detail = QDetail(0j, sort_sign, counts, axis_j)

    value = complex(sort_sign * frame.sign * word.weight)
    for p, alpha in enumerate(model.alphas, start=1):
        lo, hi = 2 * p - 1, 2 * p
        n_lo, n_hi = counts[lo], counts[hi]
        power = _generator_power(n_lo) * _generator_power(n_hi)
        if n_lo % 2 != n_hi % 2:
            top = 0j
        elif n_lo % 2:
            # c * e_hi e_lo = -c e_lo e_hi
            top = -power * math.cos(math.pi * alpha) * axis_j[lo] * axis_j[hi]
        else:
            top = power * math.sin(math.pi * alpha) * axis_j[lo] * axis_j[hi]
        detail.plane_tops[p] = top
        value *= top
    for j in range(2 * model.m + 1, model.n + 1):
        top = _generator_power(counts[j]) * axis_j[j] if counts[j] % 2 else 0j
        detail.kernel_tops[j] = top
        value *= top
    # kernel blocks sit left of the plane blocks; the plane blocks are even,
    # so moving the rotor through them is free, and the kernel blocks
    # (each e_j) are already in descending order, which reverses e_{2m+1} ... e_n
    d = model.d
    if d * (d - 1) // 2 % 2:
        value = -value
    detail.value = value * 2 ** ((model.n - big_n) / 2)
    return detail


def q_coefficient_fast(frame: ReferenceFrame, word: WedgeWord) -> complex:
    return q_coefficient_detail(frame, word).value


def q_parity_check(frame: ReferenceFrame, word: WedgeWord) -> bool:
    """If ``N - n`` is odd both paths must vanish."""
    if (len(word) - frame.model.n) % 2 == 0:
        return True
    fast = q_coefficient_fast(frame, word)
    oracle = q_coefficient_oracle(frame, word) if len(word) <= MAX_ORACLE_N else 0j
    return abs(fast) <= PARITY_TOL and abs(oracle) <= PARITY_TOL
