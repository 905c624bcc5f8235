import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import close
from looptop.holonomy import BasisCovector, LoopHolonomyModel
from looptop.topdegree import WedgeWord
from looptop.verifier import (
    ConfigError,
    SweepConfig,
    VerificationCase,
    curated_cases,
    generate_cases,
    sweep,
    verify_case,
)


def case(n, alphas, *pairs, weight=1.0):
    return VerificationCase(LoopHolonomyModel(n, alphas), WedgeWord(tuple(BasisCovector(a, k) for a, k in pairs), weight))


def test_examples():
    r = verify_case(case(2, (1 / 3,), (1, 1), (1, -1)))
    assert r.passed and close(r.top, -0.2756644477108960j)
    r = verify_case(case(3, (0.25,), (3, 0)))
    assert r.passed and close(r.q_oracle, math.sqrt(2))
    r = verify_case(case(2, (1 / 3,), (1, 1), (2, 0), (1, 0)))
    assert r.passed and r.top == 0 and abs(r.q_fast) < 1e-15


def test_report_shape():
    d = verify_case(case(2, (0.3,), (1, 1), (1, -1))).to_dict()
    assert set(d) >= {"case", "q_fast", "q_oracle", "top", "abs_diffs", "rel_diffs", "pass", "diagnostics"}
    assert d["case"]["word"] == [[1, 1], [1, -1]]
    assert all(len(d[k]) == 2 for k in ("q_fast", "q_oracle", "top"))


def test_failures_are_reported_not_raised():
    bad = case(2, (0.3,), *[(1, k) for k in range(9)])
    r = verify_case(bad)
    assert not r.passed and r.error


def test_generation_contract():
    assert generate_cases(SweepConfig(count=0)) == []
    a = generate_cases(SweepConfig(seed=7, count=30))
    b = generate_cases(SweepConfig(seed=7, count=30))
    assert [c.to_dict() for c in a] == [c.to_dict() for c in b]
    cfg = SweepConfig(seed=1)
    cases = generate_cases(cfg, 500)
    assert len(cases) == 500
    for c in cases:
        assert c.model.n <= cfg.max_n and c.model.m <= cfg.max_m
        assert len(c.word) <= cfg.max_N
        assert all(abs(f.k) <= cfg.max_k for f in c.word.factors)
        assert all(0.05 <= a <= 0.95 for a in c.model.alphas)


def test_case_round_trip():
    c = generate_cases(SweepConfig(seed=3, count=5))[4]
    assert VerificationCase.from_dict(c.to_dict()).to_dict() == c.to_dict()


@pytest.mark.parametrize(
    "bad",
    [dict(max_n=1), dict(max_n=13), dict(max_m=5, max_n=8), dict(max_N=9), dict(max_k=-1), dict(count=-1), dict(jobs=0)],
)
def test_invalid_bounds(bad):
    with pytest.raises(ConfigError):
        generate_cases(SweepConfig(**bad))


def test_unknown_config_key():
    with pytest.raises(ConfigError):
        SweepConfig.from_dict({"sede": 1})


def test_curated_corpus_passes():
    summary = sweep(SweepConfig(count=0))
    assert summary["total"] == len(curated_cases())
    assert summary["passed"] == summary["total"]
    assert summary["max_rel_diff"] <= 1e-9


def test_parity_violating_cases_pass_with_zero():
    cases = [c for c in generate_cases(SweepConfig(seed=5, count=80)) if (len(c.word) - c.model.n) % 2]
    assert cases
    for c in cases:
        r = verify_case(c)
        assert r.passed and abs(r.top) == 0 and abs(r.q_oracle) < 1e-12


def test_sweep_emits_in_order_with_jobs():
    serial, parallel = [], []
    sweep(SweepConfig(seed=2, count=12, curated=False), emit=serial.append)
    sweep(SweepConfig(seed=2, count=12, curated=False, jobs=2), emit=parallel.append)
    assert [r["case"] for r in serial] == [r["case"] for r in parallel]


@given(st.integers(0, 10**6), st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_weight_scaling(seed, c):
    base = generate_cases(SweepConfig(seed=seed, count=1, max_n=5, max_m=2, max_N=4))[0]
    scaled = VerificationCase(base.model, WedgeWord(base.word.factors, c))
    r0, r1 = verify_case(base), verify_case(scaled)
    assert r1.passed
    for x, y in [(r0.q_fast, r1.q_fast), (r0.q_oracle, r1.q_oracle), (r0.top, r1.top)]:
        assert abs(c * x - y) <= 1e-12 * (1 + abs(y))


@given(st.integers(0, 10**6))
def test_canonical_section(seed):
    import numpy as np

    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    m = int(rng.integers(0, n // 2 + 1))
    model = LoopHolonomyModel(n, tuple(rng.uniform(0.05, 0.95, m)))
    r = verify_case(VerificationCase(model, WedgeWord()))
    want = math.prod(2 * math.sin(math.pi * a) for a in model.alphas) if model.d == 0 else 0
    assert r.passed and close(r.q_fast, want) and close(r.top, want)
