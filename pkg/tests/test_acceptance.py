"""Acceptance criteria, one test per criterion at the stated tolerance and budget."""

import math
import time
from fractions import Fraction
from itertools import product

import numpy as np

from looptop.exactnum import ZERO, LaurentU
from looptop.holonomy import (
    BasisCovector,
    LoopHolonomyModel,
    green_gram_quadrature,
    green_inner,
    zeta_derivative_at_zero,
    zeta_det_closed,
    zeta_det_special_values,
)
from looptop.pfaffian import pfaffian_exact
from looptop.qside import q_coefficient_fast, q_coefficient_oracle
from looptop.simplex import j_closed, j_oracle
from looptop.topdegree import ReferenceFrame, WedgeWord, finite_top_degree, finite_top_degree_oracle, loop_top_degree
from looptop.verifier import SweepConfig, curated_cases, sweep


def rel_close(x, y, tol):
    return abs(x - y) <= tol * (1 + max(abs(x), abs(y)))


def random_models(seed, count, max_n=8):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(2, max_n + 1))
        m = int(rng.integers(0, n // 2 + 1))
        out.append(LoopHolonomyModel(n, tuple(float(a) for a in rng.uniform(0.01, 0.99, m))))
    return out


def drop(k, *idx):
    return tuple(x for i, x in enumerate(k) if i not in idx)


def case_rule(k, oracle) -> LaurentU:
    """Right-hand side of the applicable case rule, built from oracle values of shorter tuples."""
    n = len(k)
    zeros = [a for a, x in enumerate(k) if x == 0]
    if len(zeros) >= 2:
        return ZERO
    if not zeros:
        if n % 2:
            return ZERO
        gram = [[LaurentU.monomial(Fraction(1, k[a]), 1) if a != b and k[a] == -k[b] else ZERO
                 for b in range(n)] for a in range(n)]
        return pfaffian_exact(gram) * 2 ** (n // 2) if n else oracle(())
    a = zeros[0]
    if n % 2:
        return oracle(drop(k, a)) * (-1 if (n + a + 1) % 2 else 1)
    total = ZERO
    for b in range(n):
        if b != a:
            sign = (1 if b < a else -1) * (-1 if (a + b) % 2 else 1)
            total = total + oracle(drop(k, a, b)) * LaurentU.monomial(Fraction(2 * sign, k[b]), 1)
    return total


def test_criterion_1_simplex(acceptance):
    start = time.perf_counter()
    tuples = [k for n in range(6) for k in product(range(-2, 3), repeat=n)]
    oracle = {k: j_oracle(k) for k in tuples}
    bad_closed = [k for k in tuples if j_closed(k) != oracle[k]]
    bad_anti = []
    for k in tuples:
        for a in range(len(k)):
            for b in range(a + 1, len(k)):
                s = list(k)
                s[a], s[b] = s[b], s[a]
                if oracle[tuple(s)] != -oracle[k] or j_closed(s) != -j_closed(k):
                    bad_anti.append(k)
    bad_rules = [k for k in tuples if case_rule(k, oracle.__getitem__) != oracle[k]]
    elapsed = time.perf_counter() - start
    ok = not (bad_closed or bad_anti or bad_rules) and elapsed < 120
    acceptance(1, ok, f"{len(tuples)} tuples, closed!=oracle {len(bad_closed)}, antisymmetry failures "
                      f"{len(bad_anti)}, case-rule failures {len(bad_rules)}, {elapsed:.1f}s")


def test_criterion_2_zeta_determinant(acceptance):
    start = time.perf_counter()
    models = random_models(2, 100)
    special = max(abs(zeta_det_special_values(m) - zeta_det_closed(m)) for m in models)
    deriv = max(abs(zeta_derivative_at_zero(m) + math.log(zeta_det_closed(m))) for m in models[:20])
    elapsed = time.perf_counter() - start
    ok = special <= 1e-10 and deriv <= 1e-6 and elapsed < 10
    acceptance(2, ok, f"special values err {special:.1e}, finite-difference err {deriv:.1e}, {elapsed:.1f}s")


def test_criterion_3_pfaffian_norm(acceptance):
    models = random_models(3, 100)
    err = max(abs(math.prod(2 * math.sin(math.pi * a) for a in m.alphas) ** 2 - zeta_det_closed(m)) for m in models)
    acceptance(3, err <= 1e-12, f"max err {err:.1e} on 100 models")


def test_criterion_4_wick(acceptance):
    start = time.perf_counter()
    rng = np.random.default_rng(4)
    worst, singular = 0.0, 0
    for i in range(200):
        n = int(rng.integers(1, 9))
        if i % 2:
            rank = int(rng.integers(0, n))
            q = rng.normal(size=(n, rank))
            s = rng.normal(size=(rank, rank))
            a = q @ (s - s.T) @ q.T
        else:
            b = rng.normal(size=(n, n))
            a = b - b.T
        singular += np.linalg.matrix_rank(a) < n
        th = rng.normal(size=(int(rng.integers(0, n + 1)), n))
        x, y = finite_top_degree(a, th), finite_top_degree_oracle(a, th)
        worst = max(worst, abs(x - y) / (1 + max(abs(x), abs(y))))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and singular > 0 and elapsed < 60
    acceptance(4, ok, f"200 instances ({singular} singular), max rel err {worst:.1e}, {elapsed:.1f}s")


def test_criterion_5_green(acceptance):
    start = time.perf_counter()
    worst, pairs = 0.0, 0
    for model in random_models(5, 20, max_n=6):
        cov = [BasisCovector(j, k) for j in range(1, model.n + 1) for k in range(-3, 4)
               if not BasisCovector(j, k).is_kernel_mode(model)]
        quad = green_gram_quadrature(model, cov, cov)
        exact = np.array([[green_inner(model, a, b) for b in cov] for a in cov])
        worst = max(worst, float(np.max(np.abs(quad - exact))))
        pairs += len(cov) ** 2
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6 and elapsed < 60
    acceptance(5, ok, f"{pairs} pairs on 20 models, max err {worst:.1e}, {elapsed:.1f}s")


def test_criterion_6_main_identity(acceptance):
    start = time.perf_counter()
    labels = {c.label for c in curated_cases()}
    assert {"kernel zero mode", "empty word, one plane", "empty word, two planes"} <= labels
    summary = sweep(SweepConfig(seed=6, count=500, max_n=8, max_m=4, max_N=6, max_k=3))
    elapsed = time.perf_counter() - start
    ok = summary["failed"] == 0 and summary["total"] >= 500 and summary["max_rel_diff"] <= 1e-9 and elapsed < 300
    acceptance(6, ok, f"{summary['passed']}/{summary['total']} cases agree, max rel diff "
                      f"{summary['max_rel_diff']:.1e}, {elapsed:.1f}s")


def _vanishing_models():
    return [LoopHolonomyModel(2, ()), LoopHolonomyModel(2, (0.3,)), LoopHolonomyModel(3, ()),
            LoopHolonomyModel(3, (0.3,)), LoopHolonomyModel(4, ()), LoopHolonomyModel(4, (0.3,)),
            LoopHolonomyModel(4, (0.3, 0.8))]


def test_criterion_7_vanishing_laws(acceptance):
    failures = {"parity": 0, "patterns": 0, "duplicates": 0, "kernel count": 0}
    words = nonzero = 0
    for model in _vanishing_models():
        frame = ReferenceFrame(model)
        n, m = model.n, model.m
        letters = [BasisCovector(j, k) for j in range(1, n + 1) for k in (-1, 0, 1)]
        for size in range(4):
            for factors in product(letters, repeat=size):
                words += 1
                w = WedgeWord(factors)
                values = [q_coefficient_fast(frame, w), q_coefficient_oracle(frame, w), loop_top_degree(frame, w)]
                zero = all(abs(v) < 1e-12 for v in values)
                nonzero += not zero
                counts = [sum(f.axis == j for f in factors) for j in range(1, n + 1)]
                kernel_zero = [sum(f.axis == j and f.k == 0 for f in factors) for j in range(2 * m + 1, n + 1)]
                if (size - n) % 2 and not zero:
                    failures["parity"] += 1
                planes = all(counts[2 * p] % 2 == counts[2 * p + 1] % 2 for p in range(m))
                kernels = all(counts[j - 1] % 2 == 1 for j in range(2 * m + 1, n + 1)) and all(
                    z == 1 for z in kernel_zero)
                if not (planes and kernels) and not zero:
                    failures["patterns"] += 1
                if len(set(factors)) < size and not zero:
                    failures["duplicates"] += 1
                if sum(f.is_kernel_mode(model) for f in factors) != model.d and not zero:
                    failures["kernel count"] += 1
    ok = not any(failures.values()) and nonzero > 0
    acceptance(7, ok, f"{words} words on n in {{2,3,4}} ({nonzero} nonzero), failures {failures}")
