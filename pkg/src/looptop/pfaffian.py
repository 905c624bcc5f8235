"""Pfaffians of skew-symmetric matrices.

Exact rings (``LaurentU``, ``Fraction``, ints) and small float matrices go
through first-row development, memoized on the set of surviving indices.
Larger float matrices use Parlett-Reid skew tridiagonalization with pivoting.
"""

from __future__ import annotations

from typing import Any, Sequence

import numpy as np

from .exactnum import ONE, LaurentU

DEVELOPMENT_MAX = 12
SKEW_TOL = 1e-12


class NotSkewError(ValueError):
    pass


def _is_zero(x: Any) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def pfaffian_exact(a: Sequence[Sequence[Any]]) -> Any:
    """Pfaffian by development along the first surviving row.

    ``pf(A) = sum_j (-1)^(j+1) a_{1j} pf(A without rows/cols 1, j)`` with
    1-based ``j >= 2``.  Works over any ring whose elements support ``+``,
    ``*`` and negation; returns the ring's zero/one where possible.
    """
    size = len(a)
    one = _ring_one(a)
    zero = one - one
    if size % 2:
        return zero
    memo: dict[int, Any] = {0: one}

    def pf(mask: int) -> Any:
        if mask in memo:
            return memo[mask]
        idx = [i for i in range(size) if mask >> i & 1]
        first = idx[0]
        total = zero
        for pos, j in enumerate(idx[1:]):
            entry = a[first][j]
            if _is_zero(entry):
                continue
            sub = pf(mask & ~(1 << first) & ~(1 << j))
            if _is_zero(sub):
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[mask] = total
        return total

    return pf((1 << size) - 1)


def _ring_one(a: Sequence[Sequence[Any]]) -> Any:
    for row in a:
        for x in row:
            if isinstance(x, LaurentU):
                return ONE
    return 1


def pfaffian_parlett_reid(a: np.ndarray) -> complex | float:
    """Float Pfaffian via Gaussian elimination to skew-tridiagonal form."""
    a = np.array(a, dtype=complex if np.iscomplexobj(a) else float, copy=True)
    n = a.shape[0]
    if n % 2:
        return a.dtype.type(0)
    result = a.dtype.type(1)
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.abs(a[k + 1:, k]).argmax())
        if kp != k + 1:
            a[[k + 1, kp], :] = a[[kp, k + 1], :]
            a[:, [k + 1, kp]] = a[:, [kp, k + 1]]
            result = -result
        if a[k + 1, k] == 0:
            return a.dtype.type(0)
        result *= a[k, k + 1]
        if k + 2 < n:
            tau = a[k, k + 2:] / a[k, k + 1]
            # eliminate with the (k+1)-th column and row
            a[k + 2:, k + 2:] += np.outer(tau, a[k + 2:, k + 1])
            a[k + 2:, k + 2:] -= np.outer(a[k + 2:, k + 1], tau)
    return result


def check_skew(a: np.ndarray, tol: float = SKEW_TOL) -> None:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSkewError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if np.abs(a + a.T).max(initial=0.0) > tol * scale:
        raise NotSkewError("matrix is not skew-symmetric")


def pfaffian(a: Any) -> Any:
    """Pfaffian of a skew matrix; 0 for odd size.

    Object matrices (exact scalars) are developed exactly.  Float matrices up
    to ``DEVELOPMENT_MAX`` are developed too, larger ones tridiagonalized.
    """
    if isinstance(a, np.ndarray) and a.dtype != object:
        check_skew(a)
        if a.shape[0] <= DEVELOPMENT_MAX:
            return pfaffian_exact(a.tolist()) if a.shape[0] else a.dtype.type(1)
        return pfaffian_parlett_reid(a)
    rows = [list(r) for r in a]
    size = len(rows)
    for i in range(size):
        if len(rows[i]) != size:
            raise NotSkewError("expected a square matrix")
        for j in range(i, size):
            if rows[i][j] + rows[j][i] != 0:
                raise NotSkewError("matrix is not skew-symmetric")
    return pfaffian_exact(rows)


def pfaffian_sq_is_det(a: np.ndarray) -> bool:
    """``pf(A)^2 == det(A)`` to ``1e-9`` relative to the determinant's conditioning.

    A perturbation ``dA`` moves ``det A`` by up to ``|adj A| |dA|``, and
    ``|adj A|`` is the product of the ``n - 1`` largest singular values, so
    the scale is ``1 + |det A| + |A| |adj A|``.  Without the last term an odd
    matrix (exact determinant 0) fails on roundoff alone.
    """
    a = np.asarray(a)
    check_skew(a)
    if not a.size:
        return abs(pfaffian(a) - 1) <= 1e-9
    det = np.linalg.det(a)
    pf = pfaffian(a)
    sv = np.linalg.svd(a, compute_uv=False)
    scale = 1 + abs(det) + sv[0] * float(np.prod(sv[:-1]))
    return abs(pf * pf - det) <= 1e-9 * scale
