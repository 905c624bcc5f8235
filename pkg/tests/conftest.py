import math

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from looptop.holonomy import BasisCovector, LoopHolonomyModel
from looptop.topdegree import ReferenceFrame, WedgeWord

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

U = 1 / (2j * math.pi)


@st.composite
def models(draw, max_n=6, min_n=2):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(0, n // 2))
    alphas = draw(st.lists(st.floats(0.05, 0.95), min_size=m, max_size=m))
    return LoopHolonomyModel(n, tuple(alphas))


@st.composite
def model_and_word(draw, max_n=6, max_N=5, max_k=2):
    model = draw(models(max_n))
    size = draw(st.integers(0, max_N))
    factors = draw(
        st.lists(
            st.builds(BasisCovector, st.integers(1, model.n), st.integers(-max_k, max_k)),
            min_size=size,
            max_size=size,
        )
    )
    return model, WedgeWord(tuple(factors))


@st.composite
def skew_matrices(draw, max_n=8, min_n=0):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    b = rng.normal(size=(n, n))
    return b - b.T


def frame_of(model):
    return ReferenceFrame(model)


@pytest.fixture
def third():
    return LoopHolonomyModel(2, (1 / 3,))


@pytest.fixture
def quarter_with_kernel():
    return LoopHolonomyModel(3, (0.25,))


def close(a, b, tol=1e-9):
    return abs(complex(a) - complex(b)) <= tol * (1 + max(abs(complex(a)), abs(complex(b))))


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance(capsys):
    """Record and print one pass/fail line per criterion."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
