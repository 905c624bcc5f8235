"""Loop-holonomy models.

A model is the tangent holonomy of a loop in block form: ``m`` planes
``(e_{2j-1}, e_{2j})`` rotated by ``2*pi*alpha_j`` and ``d = n - 2m`` fixed
(kernel) axes.  Everything about the covariant derivative along the loop
that the top-degree computation needs is computed here: transports, the
spectrum, zeta values and determinants, and the Green's operator pairing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import cumulative_simpson, simpson

from .clifford import CliffordElement, mask_of

MIN_DIM = 2
MAX_DIM = 12
DEFAULT_PANELS = 4096
U_VALUE = 1.0 / (2j * math.pi)

# Euler-Maclaurin settings for the Hurwitz zeta function
EM_DIRECT_TERMS = 50
EM_BERNOULLI_TERMS = 8
_BERNOULLI_2J = [1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510]


class ModelError(ValueError):
    pass


class KernelModeError(ValueError):
    """A kernel mode was passed where the Green's operator is undefined."""


@dataclass(frozen=True)
class LoopHolonomyModel:
    n: int
    alphas: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        if not MIN_DIM <= self.n <= MAX_DIM:
            raise ModelError(f"dimension {self.n} outside [{MIN_DIM}, {MAX_DIM}]")
        if 2 * len(self.alphas) > self.n:
            raise ModelError(f"{len(self.alphas)} rotation planes do not fit in dimension {self.n}")
        for a in self.alphas:
            if not 0.0 < a < 1.0:
                raise ModelError(f"rotation parameter {a} must lie strictly inside (0, 1)")

    @property
    def m(self) -> int:
        return len(self.alphas)

    @property
    def d(self) -> int:
        return self.n - 2 * self.m

    def is_kernel_axis(self, axis: int) -> bool:
        return axis > 2 * self.m

    def plane_of(self, axis: int) -> int | None:
        """1-based plane index of a rotating axis, None for kernel axes."""
        return None if self.is_kernel_axis(axis) else (axis + 1) // 2

    def to_dict(self) -> dict:
        return {"n": self.n, "alphas": list(self.alphas)}


@dataclass(frozen=True)
class BasisCovector:
    """``E_{axis,k}(t) = exp(2 pi i k t) * (transport 0 -> t) e_axis``."""

    axis: int
    k: int

    def is_kernel_mode(self, model: LoopHolonomyModel) -> bool:
        return model.is_kernel_axis(self.axis) and self.k == 0

    def check(self, model: LoopHolonomyModel, max_k: int | None = None) -> None:
        if not 1 <= self.axis <= model.n:
            raise ModelError(f"axis {self.axis} outside 1..{model.n}")
        if max_k is not None and abs(self.k) > max_k:
            raise ModelError(f"frequency {self.k} outside |k| <= {max_k}")


def _rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def tangent_transport(model: LoopHolonomyModel, t: float) -> np.ndarray:
    """Constant-speed transport from time 0 to ``t``."""
    if not 0.0 <= t <= 1.0:
        raise ModelError(f"time {t} outside [0, 1]")
    p = np.eye(model.n)
    for j, a in enumerate(model.alphas):
        p[2 * j:2 * j + 2, 2 * j:2 * j + 2] = _rotation(2 * math.pi * a * t)
    return p


def tangent_holonomy(model: LoopHolonomyModel) -> np.ndarray:
    return tangent_transport(model, 1.0)


def spinor_holonomy(model: LoopHolonomyModel) -> CliffordElement:
    """Rotor product ``prod_j (cos(pi a_j) + sin(pi a_j) e_{2j-1} e_{2j})``."""
    out = CliffordElement.scalar(model.n)
    for j, a in enumerate(model.alphas, start=1):
        c, s = math.cos(math.pi * a), math.sin(math.pi * a)
        out = out * CliffordElement(model.n, {0: c, mask_of([2 * j - 1, 2 * j]): s})
    return out


def spectrum(model: LoopHolonomyModel, radius: float) -> list[tuple[complex, int]]:
    """Eigenvalues of the covariant derivative with ``|lambda| < radius``.

    ``2 pi i (k +- alpha_j)`` once each and ``2 pi i k`` with multiplicity d.
    Coinciding values (e.g. ``alpha = 1/2``) are merged.
    """
    if radius <= 0:
        raise ModelError("radius must be positive")
    kmax = int(radius / (2 * math.pi)) + 2
    counts: dict[float, int] = {}

    def add(x: float, mult: int) -> None:
        if mult and abs(2 * math.pi * x) < radius:
            key = round(x, 12)
            counts[key] = counts.get(key, 0) + mult

    for k in range(-kmax, kmax + 1):
        add(float(k), model.d)
        for a in model.alphas:
            add(k + a, 1)
            add(k - a, 1)
    return [(complex(0.0, 2 * math.pi * x), counts[x]) for x in sorted(counts)]


def zeta_det_closed(model: LoopHolonomyModel) -> float:
    """Reduced zeta determinant ``prod_j 4 sin^2(pi alpha_j)``."""
    return math.prod(4 * math.sin(math.pi * a) ** 2 for a in model.alphas)


def zeta_det_unreduced_vanishes(model: LoopHolonomyModel) -> bool:
    """The unreduced determinant is 0 exactly when there are kernel modes."""
    return model.d > 0


def zeta_det_special_values(model: LoopHolonomyModel) -> float:
    """``exp(-zeta'(0))`` from the special values of the Hurwitz zeta function.

    Uses ``zeta'(0, a) = log Gamma(a) - log(2 pi)/2``, ``zeta(0, a) = 1/2 - a``
    and ``zeta(0) = -1/2``, ``zeta'(0) = -log(2 pi)/2``.
    """
    log2pi = math.log(2 * math.pi)
    # derivative of 2 cos(pi s / 2) (2 pi)^(-s) F(s) at 0 is 2 (F'(0) - log(2 pi) F(0))
    f0 = model.d * -0.5
    f1 = model.d * -0.5 * log2pi
    for a in model.alphas:
        f0 += (0.5 - a) + (0.5 - (1 - a))
        f1 += math.lgamma(a) + math.lgamma(1 - a) - log2pi
    return math.exp(-2 * (f1 - log2pi * f0))


def hurwitz_zeta(s: float, a: float) -> float:
    """``sum_{k>=0} (k + a)^(-s)`` continued to ``s != 1`` by Euler-Maclaurin."""
    if s == 1:
        raise ModelError("Hurwitz zeta has a pole at s = 1")
    if a <= 0:
        raise ModelError("Hurwitz parameter must be positive")
    big = EM_DIRECT_TERMS + a
    total = sum((k + a) ** -s for k in range(EM_DIRECT_TERMS))
    total += big ** (1 - s) / (s - 1) + 0.5 * big ** -s
    rising = s  # s (s+1) ... (s + 2j - 2)
    fact = 2.0  # (2j)!
    for j in range(1, EM_BERNOULLI_TERMS + 1):
        total += _BERNOULLI_2J[j - 1] / fact * rising * big ** (-s - 2 * j + 1)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
    return total


def zeta_fn_numeric(model: LoopHolonomyModel, s: float) -> complex:
    """``sum lambda^(-s)`` over the nonzero spectrum, principal branch.

    Pairs ``+-i y`` combine to ``2 cos(pi s / 2) y^(-s)``; the kernel axes give
    ``d`` copies of ``2 pi i k`` for every ``k != 0``.
    """
    if not -0.5 < s < 1.5 or s == 1:
        raise ModelError(f"s = {s} outside the supported domain (-1/2, 3/2) minus {{1}}")
    inner = model.d * hurwitz_zeta(s, 1.0)
    for a in model.alphas:
        inner += hurwitz_zeta(s, a) + hurwitz_zeta(s, 1 - a)
    return complex(2 * math.cos(math.pi * s / 2) * (2 * math.pi) ** -s * inner)


def zeta_derivative_at_zero(model: LoopHolonomyModel, h: float = 1e-4) -> float:
    """Central difference of ``zeta_fn_numeric`` at 0."""
    return ((zeta_fn_numeric(model, h) - zeta_fn_numeric(model, -h)) / (2 * h)).real


def _check_pair(model: LoopHolonomyModel, a: BasisCovector, b: BasisCovector) -> None:
    for c in (a, b):
        c.check(model)
        if c.is_kernel_mode(model):
            raise KernelModeError(f"E_({c.axis},{c.k}) is a kernel mode")


def green_inner(model: LoopHolonomyModel, a: BasisCovector, b: BasisCovector) -> complex:
    """``<G a, b>``: the Green's operator applied to ``a``, paired bilinearly with ``b``.

    Closed form:
      * same axis, ``k, l != 0``: ``delta_{k,-l} u / k``
      * same rotating axis, ``l = 0``: ``-u / k`` (and ``+u / l`` with roles swapped)
      * zero modes of one plane: ``+cot(pi alpha)/2`` for ``(2j-1, 2j)``, negated reversed
      * everything else: 0
    with ``u = 1/(2 pi i)``.
    """
    _check_pair(model, a, b)
    if a.axis == b.axis:
        if a.k and b.k:
            return U_VALUE / a.k if a.k == -b.k else 0j
        if a.k and not b.k:
            return -U_VALUE / a.k
        if b.k and not a.k:
            return U_VALUE / b.k
        return 0j
    if a.k or b.k:
        return 0j
    pa, pb = model.plane_of(a.axis), model.plane_of(b.axis)
    if pa is None or pa != pb:
        return 0j
    cot = 1.0 / math.tan(math.pi * model.alphas[pa - 1])
    return complex(0.5 * cot if a.axis < b.axis else -0.5 * cot)


def _covector_samples(model: LoopHolonomyModel, c: BasisCovector, ts: np.ndarray, frames: np.ndarray) -> np.ndarray:
    return np.exp(2j * math.pi * c.k * ts)[:, None] * frames[:, :, c.axis - 1]


def _cumulative(y: np.ndarray, ts: np.ndarray) -> np.ndarray:
    # scipy's cumulative Simpson rule is real-only
    re = cumulative_simpson(y.real, x=ts, axis=0, initial=0.0)
    im = cumulative_simpson(y.imag, x=ts, axis=0, initial=0.0)
    return re + 1j * im


def green_inner_quadrature(
    model: LoopHolonomyModel,
    a: BasisCovector,
    b: BasisCovector,
    panels: int = DEFAULT_PANELS,
) -> complex:
    """Quadrature value of ``<G a, b>`` for one pair."""
    return green_gram_quadrature(model, [a], [b], panels)[0, 0]


def green_gram_quadrature(
    model: LoopHolonomyModel,
    left: Sequence[BasisCovector],
    right: Sequence[BasisCovector],
    panels: int = DEFAULT_PANELS,
) -> np.ndarray:
    """Matrix ``<G a_i, b_j>`` by composite Simpson quadrature.

    ``G v(t) = T(0->t) [ int_0^t T(s->0) v(s) ds + X int_0^1 T(s->0) v(s) ds ]``
    with ``X = (I - H)^{-1} H`` on the rotating block.  On kernel axes the
    constant of integration is fixed instead by orthogonality to the kernel.
    """
    for a in left:
        for b in right:
            _check_pair(model, a, b)
    if panels < 2 or panels % 2:
        raise ModelError("panel count must be even and >= 2")
    ts = np.linspace(0.0, 1.0, panels + 1)
    frames = np.stack([tangent_transport(model, float(t)) for t in ts])  # (T, n, n)
    hol = tangent_holonomy(model)
    r = 2 * model.m
    x = np.zeros((model.n, model.n))
    if r:
        block = hol[:r, :r]
        x[:r, :r] = np.linalg.solve(np.eye(r) - block, block)

    gram = np.empty((len(left), len(right)), dtype=complex)
    right_vals = [_covector_samples(model, b, ts, frames) for b in right]
    for i, a in enumerate(left):
        v = _covector_samples(model, a, ts, frames)
        pulled = np.einsum("tji,tj->ti", frames, v)  # T(t->0) v(t) for orthogonal frames
        running = _cumulative(pulled, ts)
        total = running[-1]
        w = running + (x @ total)[None, :]
        if model.d:
            w[:, r:] -= simpson(w[:, r:], x=ts, axis=0)[None, :]
        gv = np.einsum("tij,tj->ti", frames, w)
        for j, bv in enumerate(right_vals):
            gram[i, j] = simpson(np.sum(gv * bv, axis=1), x=ts)
    return gram
