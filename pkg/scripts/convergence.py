"""Convergence of the two numerical cross-checks.

Green's pairing: Simpson quadrature error against the closed form as the
panel count grows.  Zeta derivative: central-difference error against
``-log det`` as the step shrinks.
"""

import math

import numpy as np

from looptop.holonomy import (
    BasisCovector,
    LoopHolonomyModel,
    green_gram_quadrature,
    green_inner,
    zeta_derivative_at_zero,
    zeta_det_closed,
)


def green_errors(model: LoopHolonomyModel, max_k: int = 3) -> None:
    cov = [BasisCovector(j, k) for j in range(1, model.n + 1) for k in range(-max_k, max_k + 1)
           if not BasisCovector(j, k).is_kernel_mode(model)]
    exact = np.array([[green_inner(model, a, b) for b in cov] for a in cov])
    print(f"green pairing, n={model.n}, alphas={model.alphas}, {len(cov) ** 2} pairs")
    for panels in (16, 64, 256, 1024, 4096):
        err = np.max(np.abs(green_gram_quadrature(model, cov, cov, panels) - exact))
        print(f"  panels {panels:>5}  max err {err:.2e}")


def zeta_errors(model: LoopHolonomyModel) -> None:
    want = -math.log(zeta_det_closed(model))
    print(f"zeta'(0), n={model.n}, alphas={model.alphas}")
    for h in (1e-1, 1e-2, 1e-3, 1e-4, 1e-5):
        print(f"  step {h:.0e}  err {abs(zeta_derivative_at_zero(model, h) - want):.2e}")


if __name__ == "__main__":
    model = LoopHolonomyModel(5, (0.21, 0.64))
    green_errors(model)
    zeta_errors(model)
