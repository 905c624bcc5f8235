"""Clifford algebra Cl(R^n) on blade bitmasks.

Bit ``j`` of a blade mask stands for the generator ``e_{j+1}``; blades are
stored in increasing generator order.  Generators square to
``GENERATOR_SQUARE`` (-1 by default, so ``v*v = -|v|^2``), and the spinor
holonomy acts on vectors by ``a -> R a R^{-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

GENERATOR_SQUARE = -1
PRUNE_TOL = 1e-15
MAX_DIM = 16


class CliffordError(ValueError):
    pass


def _reorder_sign(a: int, b: int) -> int:
    """Sign picked up when the concatenated blade ``a b`` is sorted."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_product(a: int, b: int, square: int = GENERATOR_SQUARE) -> tuple[int, int]:
    """Product of two basis blades as ``(sign, mask)``."""
    sign = _reorder_sign(a, b)
    if square == -1 and bin(a & b).count("1") & 1:
        sign = -sign
    return sign, a ^ b


def grade(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for j in indices:
        if j < 1:
            raise CliffordError(f"generator index {j} must be >= 1")
        mask |= 1 << (j - 1)
    return mask


@dataclass(frozen=True)
class CliffordElement:
    n: int
    coeffs: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_DIM:
            raise CliffordError(f"dimension {self.n} outside [0, {MAX_DIM}]")
        top = 1 << self.n
        clean = {}
        for mask, c in self.coeffs.items():
            if not 0 <= mask < top:
                raise CliffordError(f"blade mask {mask} out of range for n={self.n}")
            c = complex(c)
            if abs(c) > PRUNE_TOL:
                clean[mask] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def scalar(cls, n: int, c: complex = 1.0) -> "CliffordElement":
        return cls(n, {0: c})

    @classmethod
    def vector(cls, n: int, j: int, c: complex = 1.0) -> "CliffordElement":
        return cls(n, {mask_of([j]): c})

    @classmethod
    def blade(cls, n: int, indices: Iterable[int], c: complex = 1.0) -> "CliffordElement":
        """``c * e_{i1} e_{i2} ...`` in the given (not necessarily sorted) order."""
        out = cls.scalar(n, c)
        for j in indices:
            out = out * cls.vector(n, j)
        return out

    def __getitem__(self, mask: int) -> complex:
        return self.coeffs.get(mask, 0j)

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        _check_dims(self, other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0j) + c
        return CliffordElement(self.n, out)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(self.n, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return cl_mul(self, other)
        return CliffordElement(self.n, {m: c * other for m, c in self.coeffs.items()})

    def __rmul__(self, other):
        return CliffordElement(self.n, {m: other * c for m, c in self.coeffs.items()})

    def is_close(self, other: "CliffordElement", tol: float = 1e-12) -> bool:
        diff = self - other
        return all(abs(c) <= tol for c in diff.coeffs.values())

    def grades(self) -> set[int]:
        return {grade(m) for m in self.coeffs}


def _check_dims(a: CliffordElement, b: CliffordElement) -> None:
    if a.n != b.n:
        raise CliffordError(f"dimension mismatch: {a.n} vs {b.n}")


def cl_mul(a: CliffordElement, b: CliffordElement, square: int = GENERATOR_SQUARE) -> CliffordElement:
    _check_dims(a, b)
    out: dict[int, complex] = {}
    for ma, ca in a.coeffs.items():
        for mb, cb in b.coeffs.items():
            sign, m = blade_product(ma, mb, square)
            out[m] = out.get(m, 0j) + sign * ca * cb
    return CliffordElement(a.n, out)


def supertrace(a: CliffordElement) -> complex:
    """``2^(n/2)`` times the coefficient of ``e_1 ... e_n``."""
    return 2 ** (a.n / 2) * a[(1 << a.n) - 1]


def sub_top_coeff(a: CliffordElement, axes: Iterable[int]) -> complex:
    """Coefficient of the full blade over ``axes`` for ``a`` living in Cl(span axes)."""
    axes_mask = mask_of(axes)
    for m, c in a.coeffs.items():
        if m & ~axes_mask:
            raise CliffordError(f"element has support outside axes {sorted(axes)}")
    return a[axes_mask]
