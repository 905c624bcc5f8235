"""Antisymmetrized simplex integrals

    J(k_1, ..., k_N) = sum_sigma sgn(sigma) int_{Delta_N} exp(2 pi i sum_a k_{sigma_a} tau_a) dtau

with ``Delta_N = {0 <= tau_1 <= ... <= tau_N <= 1}``.  Two routes: a brute-force
permutation sum of exact iterated integrals, and the closed-form case rules.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactnum import (
    ONE,
    ZERO,
    LaurentU,
    PolyExp,
    graded_integrate,
    graded_shift,
    laurent_to_complex,
    polyexp_eval_at_one,
    polyexp_integrate,
)
from .pfaffian import pfaffian_exact

MAX_ORACLE_N = 8
DEFAULT_MAX_N = 8
DEFAULT_MAX_K = 64


class SimplexSizeError(ValueError):
    pass


def check_frequencies(k: Sequence[int], max_n: int = DEFAULT_MAX_N, max_k: int = DEFAULT_MAX_K) -> tuple[int, ...]:
    k = tuple(int(x) for x in k)
    if len(k) > max_n:
        raise SimplexSizeError(f"{len(k)} frequencies exceed the limit {max_n}")
    if any(abs(x) > max_k for x in k):
        raise SimplexSizeError(f"frequency outside |k| <= {max_k}")
    return k


def j_oracle(k: Sequence[int]) -> LaurentU:
    """Exact J by summing every permutation's iterated integral.

    Permutations are enumerated depth first, so integrals over the
    innermost variables are shared between permutations with a common prefix.
    """
    k = tuple(int(x) for x in k)
    if len(k) > MAX_ORACLE_N:
        raise SimplexSizeError(f"oracle limited to N <= {MAX_ORACLE_N}, got {len(k)}")
    n = len(k)
    acc: dict[int, Fraction] = {}

    def descend(prefix: tuple[int, ...], unused: list[int], sign: int) -> None:
        if not unused:
            # level n: coefficient of tau^p carries u^(n - p)
            for poly in _iterated(prefix).values():
                for p, c in enumerate(poly):
                    if c:
                        acc[n - p] = acc.get(n - p, 0) + sign * c
            return
        for pos, label in enumerate(unused):
            # choosing `label` next contributes one inversion per smaller unused label
            rest = unused[:pos] + unused[pos + 1:]
            descend(prefix + (k[label],), rest, -sign if pos & 1 else sign)

    descend((), list(range(n)), 1)
    return LaurentU(acc)


@lru_cache(maxsize=1 << 16)
def _iterated(freqs: tuple[int, ...]) -> dict:
    """``tau -> int_{0<=t_1<=...<=t_r<=tau} exp(2 pi i sum_a freqs_a t_a)`` (graded form).

    Cached on the frequency sequence; callers must not mutate the result.
    """
    if not freqs:
        return {0: [Fraction(1)]}
    return graded_integrate(graded_shift(_iterated(freqs[:-1]), freqs[-1]))


def j_oracle_polyexp(k: Sequence[int]) -> LaurentU:
    """Same sum as ``j_oracle`` but through the general ``PolyExp`` calculus (slow)."""
    k = tuple(int(x) for x in k)
    if len(k) > MAX_ORACLE_N:
        raise SimplexSizeError(f"oracle limited to N <= {MAX_ORACLE_N}, got {len(k)}")
    total = ZERO

    def descend(f: PolyExp, unused: list[int], sign: int) -> None:
        nonlocal total
        if not unused:
            total = total + polyexp_eval_at_one(f) * sign
            return
        for pos, label in enumerate(unused):
            g = polyexp_integrate(f.shift(k[label]))
            rest = unused[:pos] + unused[pos + 1:]
            descend(g, rest, -sign if pos & 1 else sign)

    descend(PolyExp.one(), list(range(len(k))), 1)
    return total


def _gram_matrix(k: tuple[int, ...]) -> list[list[LaurentU]]:
    # entry (a, b) = delta_{k_a, -k_b} / (2 pi i k_a) = delta * u / k_a
    n = len(k)
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            if a != b and k[a] == -k[b]:
                row.append(LaurentU.monomial(Fraction(1, k[a]), 1))
            else:
                row.append(ZERO)
        rows.append(row)
    return rows


@lru_cache(maxsize=65536)
def _j_closed(k: tuple[int, ...]) -> LaurentU:
    n = len(k)
    if n == 0:
        return ONE
    zeros = [a for a, x in enumerate(k) if x == 0]
    if len(zeros) >= 2:
        return ZERO
    if not zeros:
        if n % 2:
            return ZERO
        return pfaffian_exact(_gram_matrix(k)) * 2 ** (n // 2)
    a = zeros[0]
    rest = k[:a] + k[a + 1:]
    if n % 2:
        # 1-based: (-1)^(N + a)
        return _j_closed(rest) * (-1 if (n + a + 1) % 2 else 1)
    total = ZERO
    for b in range(n):
        if b == a:
            continue
        lo, hi = sorted((a, b))
        reduced = k[:lo] + k[lo + 1:hi] + k[hi + 1:]
        inner = _j_closed(reduced)
        if inner.is_zero():
            continue
        # sgn(a - b) * (-1)^(a + b) / (pi i k_b), and 1/(pi i k_b) = 2u / k_b
        sign = (1 if b < a else -1) * (-1 if (a + b) % 2 else 1)
        total = total + inner * LaurentU.monomial(Fraction(2 * sign, k[b]), 1)
    return total


def j_closed(k: Sequence[int]) -> LaurentU:
    """Exact J from the zero-pattern case rules (no integration)."""
    return _j_closed(tuple(int(x) for x in k))


def j_numeric(k: Sequence[int]) -> complex:
    return laurent_to_complex(j_closed(k))


def format_laurent(x: LaurentU) -> str:
    """Render as ``r * u^p`` terms, e.g. ``2 * u^1``."""
    if x.is_zero():
        return "0"
    return " + ".join(f"{x.coeff(p)} * u^{p}" for p in sorted(x.degrees(), reverse=True))
