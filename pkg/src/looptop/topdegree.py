"""Top-degree coefficients ``[exp(omega) ^ theta]_top``.

Finite dimensions: ``omega(v, w) = <v, A w>`` for a real skew ``A`` on R^n,
evaluated both literally in the exterior algebra and by the Pfaffian
(fermionic Wick) formula with a kernel/coimage split.

Loop models: the same quantity relative to the reference frame, assembled
from the Green's operator pairing and the kernel pairing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np
import scipy.linalg

from .clifford import _reorder_sign
from .holonomy import BasisCovector, LoopHolonomyModel, ModelError, green_inner
from .pfaffian import NotSkewError, check_skew, pfaffian, pfaffian_sq_is_det

__all__ = [
    "NotSkewError",
    "pfaffian",
    "pfaffian_sq_is_det",
    "finite_top_degree",
    "finite_top_degree_oracle",
    "ReferenceFrame",
    "WedgeWord",
    "TopDegreeResult",
    "loop_top_degree",
    "permutation_sign",
]

ORACLE_MAX_DIM = 10
RANK_TOL = 1e-10


def _check_inputs(a: np.ndarray, thetas: Sequence[Sequence[float]]) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=float)
    check_skew(a)
    n = a.shape[0]
    th = np.asarray(thetas, dtype=float).reshape(len(thetas), n) if len(thetas) else np.zeros((0, n))
    if th.shape[1] != n:
        raise ValueError(f"covectors of length {th.shape[1]} do not match dimension {n}")
    return a, th


def _wedge(x: dict[int, float], y: dict[int, float]) -> dict[int, float]:
    out: dict[int, float] = {}
    for ma, ca in x.items():
        for mb, cb in y.items():
            if ma & mb:
                continue
            out[ma | mb] = out.get(ma | mb, 0.0) + _reorder_sign(ma, mb) * ca * cb
    return out


def finite_top_degree_oracle(a: np.ndarray, thetas: Sequence[Sequence[float]]) -> float:
    """Expand ``exp(omega) ^ theta_N ^ ... ^ theta_1`` blade by blade.

    ``thetas`` lists the factors left to right (``theta_N`` first).  The
    result is the coefficient of ``e_1 ^ ... ^ e_n``.
    """
    a, th = _check_inputs(a, thetas)
    n = a.shape[0]
    if n > ORACLE_MAX_DIM:
        raise ValueError(f"exterior-algebra oracle limited to n <= {ORACLE_MAX_DIM}")
    omega = {(1 << i) | (1 << j): a[i, j] for i in range(n) for j in range(i + 1, n) if a[i, j]}
    power = {0: 1.0}
    expo = {0: 1.0}
    for r in range(1, n // 2 + 1):
        power = _wedge(power, omega)
        for m, c in power.items():
            expo[m] = expo.get(m, 0.0) + c / math.factorial(r)
    out = expo
    for row in th:
        out = _wedge(out, {1 << i: row[i] for i in range(n) if row[i]})
    return out.get((1 << n) - 1, 0.0)


def permutation_sign(perm: Sequence[int]) -> int:
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _wick(a: np.ndarray, phis: np.ndarray) -> float:
    """``[exp(omega) ^ phi_1 ^ ... ^ phi_r]_top`` for invertible ``A``.

    Equals ``pf(A) * pf(<phi_a, (A^T)^{-1} phi_b>)``.
    """
    if len(phis) % 2:
        return 0.0
    pf_a = pfaffian(a) if a.size else 1.0
    if not len(phis):
        return pf_a
    x = np.linalg.inv(a.T)
    m = phis @ x @ phis.T
    m = 0.5 * (m - m.T)
    return pf_a * pfaffian(m)


def finite_top_degree(a: np.ndarray, thetas: Sequence[Sequence[float]]) -> float:
    """Top-degree coefficient by the Pfaffian formula.

    ``R^n`` is split into the coimage and kernel of ``A`` with a positively
    oriented orthonormal frame (coimage first).  Expanding the factors
    multilinearly, exactly ``dim ker A`` of them must land in the kernel; those
    contribute a determinant, the rest go through the Wick formula.
    """
    a, th = _check_inputs(a, thetas)
    n = a.shape[0]
    if n == 0:
        return 1.0 if not len(th) else 0.0
    kernel = scipy.linalg.null_space(a, rcond=RANK_TOL)
    d = kernel.shape[1]
    if d == 0:
        return _wick(a, th)
    coimage = scipy.linalg.null_space(kernel.T)
    frame = np.hstack([coimage, kernel])
    if np.linalg.det(frame) < 0:
        frame[:, -1] = -frame[:, -1]
    c = n - d
    a_c = frame[:, :c].T @ a @ frame[:, :c]
    a_c = 0.5 * (a_c - a_c.T)
    th_c = th @ frame[:, :c]
    th_k = th @ frame[:, c:]
    big_n = len(th)
    if big_n < d:
        return 0.0
    total = 0.0
    for chosen in combinations(range(big_n), d):
        rest = [i for i in range(big_n) if i not in chosen]
        # move the kernel factors to the right end, keeping relative order
        sign = permutation_sign(rest + list(chosen))
        kern = np.linalg.det(th_k[list(chosen)])
        if kern == 0.0:
            continue
        total += sign * kern * _wick(a_c, th_c[rest])
    return total


@dataclass(frozen=True)
class ReferenceFrame:
    """The model together with the frame conventions shared by both sides."""

    model: LoopHolonomyModel
    epsilon0: int = 1
    orientation: int = 1

    def __post_init__(self):
        if self.epsilon0 not in (1, -1) or self.orientation not in (1, -1):
            raise ModelError("frame signs must be +1 or -1")

    @property
    def sign(self) -> int:
        return self.epsilon0 * self.orientation


@dataclass(frozen=True)
class WedgeWord:
    """``weight * theta_N ^ ... ^ theta_1`` with ``factors = (theta_N, ..., theta_1)``."""

    factors: tuple[BasisCovector, ...] = ()
    weight: complex = 1.0

    def __post_init__(self):
        object.__setattr__(
            self, "factors", tuple(f if isinstance(f, BasisCovector) else BasisCovector(*f) for f in self.factors)
        )

    @classmethod
    def parse(cls, text: str, weight: complex = 1.0) -> "WedgeWord":
        """``"1:1,1:-1"`` is ``E_{1,1} ^ E_{1,-1}``."""
        text = text.strip()
        if not text:
            return cls((), weight)
        factors = []
        for item in text.split(","):
            axis, _, k = item.partition(":")
            if not _:
                raise ValueError(f"expected axis:frequency, got {item!r}")
            factors.append(BasisCovector(int(axis), int(k)))
        return cls(tuple(factors), weight)

    def __len__(self) -> int:
        return len(self.factors)

    def check(self, model: LoopHolonomyModel, max_k: int | None = None) -> None:
        for f in self.factors:
            f.check(model, max_k)

    def to_list(self) -> list[list[int]]:
        return [[f.axis, f.k] for f in self.factors]


@dataclass
class TopDegreeResult:
    value: complex
    eta0: int = 1
    kernel_pairing: float = 0.0
    kernel_positions: list[int] = field(default_factory=list)
    pf_omega: complex = 0j
    sin_product: float = 1.0

    def to_dict(self) -> dict:
        return {
            "value": [self.value.real, self.value.imag],
            "eta0": self.eta0,
            "kernel_pairing": self.kernel_pairing,
            "kernel_positions": self.kernel_positions,
            "pf_omega": [complex(self.pf_omega).real, complex(self.pf_omega).imag],
            "sin_product": self.sin_product,
        }


def loop_top_degree_detail(frame: ReferenceFrame, word: WedgeWord) -> TopDegreeResult:
    model = frame.model
    word.check(model)
    factors = word.factors
    big_n = len(factors)
    sin_product = math.prod(2 * math.sin(math.pi * a) for a in model.alphas)
    # positions counted from the right: factors[i] is theta_{N - i}
    # kernel factors in increasing position (theta_1 side first), the rest in word order
    kernel_idx = [i for i, f in enumerate(factors) if f.is_kernel_mode(model)][::-1]
    rest_idx = [i for i, f in enumerate(factors) if not f.is_kernel_mode(model)]
    positions = [big_n - i for i in kernel_idx]
    if len(kernel_idx) != model.d or len(rest_idx) % 2:
        return TopDegreeResult(0j, 1, 0.0, positions, 0j, sin_product)
    eta0 = permutation_sign(kernel_idx + rest_idx)
    gram = np.zeros((model.d, model.d))
    for r, i in enumerate(kernel_idx):
        gram[r, factors[i].axis - 2 * model.m - 1] = 1.0
    kernel_pairing = float(np.linalg.det(gram)) if model.d else 1.0
    if kernel_pairing == 0.0:
        return TopDegreeResult(0j, eta0, 0.0, positions, 0j, sin_product)
    omega = np.array(
        [[green_inner(model, factors[i], factors[j]) if i != j else 0j for j in rest_idx] for i in rest_idx],
        dtype=complex,
    ).reshape(len(rest_idx), len(rest_idx))
    pf_omega = complex(pfaffian(omega)) if len(rest_idx) else 1 + 0j
    value = frame.sign * word.weight * eta0 * sin_product * kernel_pairing * pf_omega
    return TopDegreeResult(complex(value), eta0, kernel_pairing, positions, pf_omega, sin_product)


def loop_top_degree(frame: ReferenceFrame, word: WedgeWord) -> complex:
    """Coefficient of ``[exp(omega) ^ theta]_top`` relative to the reference frame.

    ``eta0 * prod_j 2 sin(pi alpha_j) * (kernel pairing) * pf(Omega)``, where the
    kernel factors are moved to the front in increasing position (``eta0`` is
    that permutation's sign),
    the kernel pairing is the determinant against ``E_{2m+1}, ..., E_n`` and
    ``Omega`` is the Green's pairing on the remaining factors in word order.
    """
    return loop_top_degree_detail(frame, word).value
