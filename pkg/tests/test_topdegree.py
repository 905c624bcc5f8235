import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import U, close, model_and_word, models
from looptop.holonomy import BasisCovector, LoopHolonomyModel, ModelError, green_inner
from looptop.topdegree import (
    ReferenceFrame,
    WedgeWord,
    finite_top_degree,
    finite_top_degree_oracle,
    loop_top_degree,
    loop_top_degree_detail,
    permutation_sign,
)


def word(*pairs):
    return WedgeWord(tuple(BasisCovector(a, k) for a, k in pairs))


def test_finite_examples():
    lam = 2.5
    a = np.array([[0, lam], [-lam, 0]])
    assert math.isclose(finite_top_degree(a, []), lam)
    assert math.isclose(finite_top_degree_oracle(a, []), lam)
    assert finite_top_degree(np.zeros((2, 2)), [[0, 1], [1, 0]]) == pytest.approx(-1)
    assert finite_top_degree_oracle(np.zeros((2, 2)), [[0, 1], [1, 0]]) == pytest.approx(-1)
    assert finite_top_degree_oracle(a, [[1, 0], [0, 1], [1, 1]]) == 0


def test_finite_four_dim_example():
    a = np.zeros((4, 4))
    a[0, 1], a[1, 0], a[2, 3], a[3, 2] = 1, -1, 2, -2
    e1, e2 = np.eye(4)[0], np.eye(4)[1]
    got = finite_top_degree(a, [e2, e1])
    assert got == pytest.approx(finite_top_degree_oracle(a, [e2, e1]))
    # pf(A) <e2, (A^T)^{-1} e1> = 2 * (-1)
    assert got == pytest.approx(-2)


@st.composite
def finite_instances(draw):
    n = draw(st.integers(1, 8))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    rank = draw(st.integers(0, n))
    q = rng.normal(size=(n, rank))
    s = rng.normal(size=(rank, rank))
    a = q @ (s - s.T) @ q.T if draw(st.booleans()) else (lambda b: b - b.T)(rng.normal(size=(n, n)))
    size = draw(st.integers(0, n))
    return a, rng.normal(size=(size, n))


@given(finite_instances())
def test_wick_matches_exterior_algebra(inst):
    a, th = inst
    x, y = finite_top_degree(a, th), finite_top_degree_oracle(a, th)
    assert abs(x - y) <= 1e-9 * (1 + abs(y))


def test_finite_errors():
    with pytest.raises(ValueError):
        finite_top_degree(np.zeros((2, 2)), [[1, 0, 0]])
    with pytest.raises(ValueError):
        finite_top_degree_oracle(np.zeros((11, 11)), [])
    with pytest.raises(ValueError):
        finite_top_degree(np.ones((2, 2)), [])


def test_loop_examples(third, quarter_with_kernel):
    f = ReferenceFrame(third)
    assert close(loop_top_degree(f, word((1, 1), (1, -1))), math.sqrt(3) * U)
    assert close(loop_top_degree(f, word()), math.sqrt(3))
    assert loop_top_degree(f, word((1, 1), (1, 1))) == 0
    assert close(loop_top_degree(ReferenceFrame(quarter_with_kernel), word((3, 0))), math.sqrt(2))


def test_loop_diagnostics(quarter_with_kernel):
    d = loop_top_degree_detail(ReferenceFrame(quarter_with_kernel), word((1, 1), (3, 0), (1, -1)))
    assert d.eta0 == -1
    assert d.kernel_positions == [2]
    assert d.kernel_pairing == 1.0
    assert set(d.to_dict()) >= {"value", "eta0", "kernel_pairing", "pf_omega"}


def test_frame_and_word_validation():
    with pytest.raises(ModelError):
        ReferenceFrame(LoopHolonomyModel(2, (0.3,)), epsilon0=2)
    with pytest.raises(ModelError):
        loop_top_degree(ReferenceFrame(LoopHolonomyModel(2, (0.3,))), word((3, 0)))
    with pytest.raises(ValueError):
        WedgeWord.parse("1;1")
    assert WedgeWord.parse(" 1:1, 2:-3 ").to_list() == [[1, 1], [2, -3]]
    assert WedgeWord.parse("").factors == ()


@given(model_and_word(), st.data())
def test_alternating(mw, data):
    model, w = mw
    if len(w) < 2:
        return
    i = data.draw(st.integers(0, len(w) - 1))
    j = data.draw(st.integers(0, len(w) - 1).filter(lambda x: x != i))
    f = list(w.factors)
    f[i], f[j] = f[j], f[i]
    frame = ReferenceFrame(model)
    a, b = loop_top_degree(frame, w), loop_top_degree(frame, WedgeWord(tuple(f)))
    assert abs(a + b) <= 1e-12 * (1 + abs(a))


@given(model_and_word())
def test_kernel_count_selection(mw):
    model, w = mw
    kernel = sum(f.is_kernel_mode(model) for f in w.factors)
    if kernel != model.d:
        assert loop_top_degree(ReferenceFrame(model), w) == 0


@given(models(max_n=6), st.data())
def test_omega_block_splitting(model, data):
    # pairs on different axes do not couple, so pf(Omega) factorizes over axes
    frame = ReferenceFrame(model)
    keys = data.draw(st.lists(st.tuples(st.integers(1, model.n), st.integers(1, 3)), min_size=1, max_size=3, unique=True))
    pairs = [((j, k), (j, -k)) for j, k in keys]
    kernel = [(j, 0) for j in range(model.n, 2 * model.m, -1)]
    full = word(*[x for p in pairs for x in p], *kernel)
    # pf of a 2x2 block is its upper-right entry
    parts = [green_inner(model, BasisCovector(*a), BasisCovector(*b)) for a, b in pairs]
    got = loop_top_degree_detail(frame, full).pf_omega
    assert close(got, math.prod(parts), 1e-12)


def _eta_closed_form(model, sorted_word):
    # theta_1 is the last factor; beta_j is the position of the zero inside axis j's block
    rev = sorted_word.factors[::-1]
    total = 0
    for j in range(2 * model.m + 1, model.n + 1):
        block = [f for f in rev if f.axis == j]
        total += [f.k for f in block].index(0)
    # reversing the kernel block relative to the word order adds d(d-1)/2 transpositions
    return (-1) ** (total + model.d * (model.d - 1) // 2)


@given(models(max_n=6), st.data())
def test_eta_closed_form_on_sorted_words(model, data):
    blocks = []
    for j in range(1, model.n + 1):
        if model.is_kernel_axis(j):
            extra = data.draw(st.integers(0, 2))
            ks = data.draw(st.permutations([0] + ([extra, -extra] if extra else [])))
        else:
            ks = data.draw(st.lists(st.integers(-2, 2), max_size=2))
        blocks.append([BasisCovector(j, k) for k in ks])
    for p in range(1, model.m + 1):
        if (len(blocks[2 * p - 2]) + len(blocks[2 * p - 1])) % 2:
            blocks[2 * p - 1].append(BasisCovector(2 * p, 1))
    # theta_1 ... theta_N ascend through the axes; the word lists theta_N first
    rev = [f for b in blocks for f in b]
    w = WedgeWord(tuple(rev[::-1]))
    assume_ok = all(sum(f.k == 0 for f in b) == 1 for b in blocks[2 * model.m:])
    if assume_ok:
        assert loop_top_degree_detail(ReferenceFrame(model), w).eta0 == _eta_closed_form(model, w)


def test_permutation_sign():
    assert permutation_sign([]) == 1
    assert permutation_sign([1, 0]) == -1
    assert permutation_sign([2, 0, 1]) == 1
