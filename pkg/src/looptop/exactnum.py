"""Exact scalars for the simplex integrals.

Everything produced by integrating ``tau**p * exp(2*pi*i*q*tau)`` over
integer frequencies ``q`` is a Laurent polynomial in the formal symbol
``u = 1/(2*pi*i)`` with rational coefficients, so no floating point is
needed until the very end.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction
Scalar = Union[int, Fraction, "LaurentU"]

U_VALUE = 1.0 / (2j * math.pi)


class LaurentU:
    """Finite sum ``sum_p c_p * u**p`` with rational ``c_p``.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, Union[int, Fraction]] | None = None):
        clean = {}
        if coeffs:
            for p, c in coeffs.items():
                c = Fraction(c)
                if c:
                    clean[int(p)] = c
        self._coeffs = clean
        self._hash = None

    @classmethod
    def const(cls, c: Union[int, Fraction]) -> "LaurentU":
        return cls({0: c})

    @classmethod
    def monomial(cls, c: Union[int, Fraction], p: int) -> "LaurentU":
        return cls({p: c})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def degrees(self) -> list[int]:
        return sorted(self._coeffs)

    def coeff(self, p: int) -> Fraction:
        return self._coeffs.get(p, Fraction(0))

    @staticmethod
    def _lift(x) -> "LaurentU":
        if isinstance(x, LaurentU):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentU.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for p, c in other._coeffs.items():
            out[p] = out.get(p, 0) + c
        return LaurentU(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentU({p: -c for p, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentU({p: c * other for p, c in self._coeffs.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for p, a in self._coeffs.items():
            for q, b in other._coeffs.items():
                out[p + q] = out.get(p + q, 0) + a * b
        return LaurentU(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentU({p: c / other for p, c in self._coeffs.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other._coeffs) != 1:
            raise ZeroDivisionError("can only divide by a nonzero monomial")
        (q, b), = other._coeffs.items()
        return LaurentU({p - q: c / b for p, c in self._coeffs.items()})

    def __pow__(self, k: int):
        if k < 0:
            return LaurentU.const(1) / self ** (-k)
        out = LaurentU.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __bool__(self):
        return bool(self._coeffs)

    def __complex__(self):
        return laurent_to_complex(self)

    def __repr__(self):
        return f"LaurentU({self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for p in sorted(self._coeffs, reverse=True):
            c = self._coeffs[p]
            parts.append(f"{c} * u^{p}" if p else f"{c}")
        return " + ".join(parts)


ZERO = LaurentU()
ONE = LaurentU.const(1)
U = LaurentU.monomial(1, 1)


def laurent_to_complex(x: LaurentU) -> complex:
    """Substitute ``u = 1/(2*pi*i)`` numerically."""
    total = 0j
    for p, c in x.coeffs.items():
        total += float(c) * U_VALUE**p
    return total


class PolyExp:
    """A function ``sum_q P_q(tau) * exp(2*pi*i*q*tau)`` of one real variable.

    ``terms`` maps each integer frequency ``q`` to the coefficient list of the
    polynomial ``P_q`` (lowest power first, entries are ``LaurentU``).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Iterable[Scalar]] | None = None):
        clean: dict[int, tuple[LaurentU, ...]] = {}
        for q, poly in (terms or {}).items():
            coeffs = [LaurentU._lift(c) for c in poly]
            while coeffs and coeffs[-1].is_zero():
                coeffs.pop()
            if coeffs:
                clean[int(q)] = tuple(coeffs)
        self.terms = clean

    @classmethod
    def exp(cls, q: int, coeff: Scalar = 1) -> "PolyExp":
        return cls({q: [coeff]})

    @classmethod
    def one(cls) -> "PolyExp":
        return cls({0: [ONE]})

    def __add__(self, other: "PolyExp") -> "PolyExp":
        out = {q: list(p) for q, p in self.terms.items()}
        for q, poly in other.terms.items():
            acc = out.setdefault(q, [])
            for i, c in enumerate(poly):
                if i < len(acc):
                    acc[i] = acc[i] + c
                else:
                    acc.append(c)
        return PolyExp(out)

    def __neg__(self) -> "PolyExp":
        return PolyExp({q: [-c for c in p] for q, p in self.terms.items()})

    def __sub__(self, other: "PolyExp") -> "PolyExp":
        return self + (-other)

    def scale(self, s: Scalar) -> "PolyExp":
        return PolyExp({q: [c * s for c in p] for q, p in self.terms.items()})

    def shift(self, q0: int) -> "PolyExp":
        """Multiply by ``exp(2*pi*i*q0*tau)``."""
        return PolyExp({q + q0: p for q, p in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, PolyExp):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return f"PolyExp({self.terms!r})"

    def derivative(self) -> "PolyExp":
        """Formal d/dtau, with d/dtau exp(2*pi*i*q*tau) = (q/u) exp(...)."""
        out: dict[int, list[LaurentU]] = {}
        for q, poly in self.terms.items():
            d = [poly[i] * i for i in range(1, len(poly))]
            if q:
                factor = LaurentU.monomial(q, -1)
                scaled = [c * factor for c in poly]
                for i, c in enumerate(scaled):
                    if i < len(d):
                        d[i] = d[i] + c
                    else:
                        d.append(c)
            out[q] = d
        return PolyExp(out)

    def __call__(self, tau: float) -> complex:
        total = 0j
        for q, poly in self.terms.items():
            val = sum(complex(c) * tau**i for i, c in enumerate(poly))
            total += val * complex(math.cos(2 * math.pi * q * tau), math.sin(2 * math.pi * q * tau))
        return total


def polyexp_integrate(f: PolyExp) -> PolyExp:
    """Return ``tau -> integral_0^tau f(s) ds`` as an exact ``PolyExp``.

    For ``q != 0`` uses the antiderivative
    ``s^p e^{cs} -> e^{cs} sum_r (-1)^r p!/(p-r)! s^(p-r) / c^(r+1)`` with
    ``1/c = u/q``; the value at ``s = 0`` lands in the frequency-0 term.
    """
    out: dict[int, list[LaurentU]] = {}

    def add(q: int, power: int, c: LaurentU) -> None:
        acc = out.setdefault(q, [])
        while len(acc) <= power:
            acc.append(ZERO)
        acc[power] = acc[power] + c

    for q, poly in f.terms.items():
        for p, coeff in enumerate(poly):
            if coeff.is_zero():
                continue
            if q == 0:
                add(0, p + 1, coeff / (p + 1))
                continue
            falling = 1
            for r in range(p + 1):
                # inv_c^(r+1) = (u/q)^(r+1)
                term = coeff * LaurentU.monomial(Fraction((-1) ** r * falling, q ** (r + 1)), r + 1)
                add(q, p - r, term)
                if r == p:
                    add(0, 0, -term)
                falling *= p - r
    return PolyExp(out)


def polyexp_eval_at_one(f: PolyExp) -> LaurentU:
    """Value at ``tau = 1``, where every ``exp(2*pi*i*q)`` is exactly 1."""
    total = ZERO
    for poly in f.terms.values():
        for c in poly:
            total = total + c
    return total


def to_laurent(x: Scalar) -> LaurentU:
    out = LaurentU._lift(x)
    if out is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to LaurentU")
    return out


# Graded representation.  Every function reached by iterated integration of
# pure exponentials is homogeneous: after ``level`` integrations a term
# ``tau^p * exp(2 pi i q tau)`` always carries ``u^(level - p)``.  Storing only
# the rational coefficient per (q, p) avoids LaurentU overhead in hot loops.

Graded = dict  # q -> list[Fraction], index p


def graded_integrate(f: Graded) -> Graded:
    """Same calculus as ``polyexp_integrate`` on the graded representation.

    Input at level ``L`` maps to output at level ``L + 1``.
    """
    out: dict[int, list] = {}
    zero_acc = out.setdefault(0, [0])
    for q, poly in f.items():
        if q == 0:
            for p, c in enumerate(poly):
                if not c:
                    continue
                while len(zero_acc) <= p + 1:
                    zero_acc.append(0)
                zero_acc[p + 1] += Fraction(c, p + 1) if isinstance(c, int) else c / (p + 1)
            continue
        acc = out.setdefault(q, [])
        for p, c in enumerate(poly):
            if not c:
                continue
            while len(acc) <= p:
                acc.append(0)
            term = Fraction(c) / q
            for r in range(p + 1):
                # term = c * (-1)^r p!/(p-r)! / q^(r+1)
                acc[p - r] += term
                if r == p:
                    zero_acc[0] -= term
                term = -term * (p - r) / q
    return {q: poly for q, poly in out.items() if any(poly)}


def graded_shift(f: Graded, q0: int) -> Graded:
    return {q + q0: poly for q, poly in f.items()}


def graded_eval_at_one(f: Graded, level: int) -> LaurentU:
    acc: dict[int, Fraction] = {}
    for poly in f.values():
        for p, c in enumerate(poly):
            if c:
                acc[level - p] = acc.get(level - p, 0) + c
    return LaurentU(acc)


def graded_to_polyexp(f: Graded, level: int) -> PolyExp:
    return PolyExp({q: [LaurentU.monomial(c, level - p) for p, c in enumerate(poly)] for q, poly in f.items()})
