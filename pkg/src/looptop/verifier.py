"""Three-way check of the main identity on random and curated cases.

Each case is evaluated by the fast factorized supertrace, the literal
permutation-sum oracle and the Green's-operator top degree; all three must
agree to a relative tolerance.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from .holonomy import BasisCovector, LoopHolonomyModel
from .qside import q_coefficient_detail, q_coefficient_oracle
from .simplex import MAX_ORACLE_N
from .topdegree import ReferenceFrame, WedgeWord, loop_top_degree_detail

REL_TOL = 1e-9
ALPHA_MARGIN = 0.05


class ConfigError(ValueError):
    pass


@dataclass
class SweepConfig:
    seed: int = 0
    count: int = 500
    max_n: int = 8
    max_m: int = 4
    max_N: int = 6
    max_k: int = 3
    jobs: int = 1
    curated: bool = True
    tol: float = REL_TOL

    def validate(self) -> None:
        if self.count < 0:
            raise ConfigError("count must be >= 0")
        if not 2 <= self.max_n <= 12:
            raise ConfigError("max_n must lie in [2, 12]")
        if not 0 <= self.max_m <= self.max_n // 2:
            raise ConfigError("max_m must lie in [0, max_n // 2]")
        if not 0 <= self.max_N <= MAX_ORACLE_N:
            raise ConfigError(f"max_N must lie in [0, {MAX_ORACLE_N}]")
        if not 0 <= self.max_k <= 64:
            raise ConfigError("max_k must lie in [0, 64]")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        return cls(**data)


@dataclass(frozen=True)
class VerificationCase:
    model: LoopHolonomyModel
    word: WedgeWord
    seed: int = 0
    label: str = ""
    expected: complex | None = None

    def to_dict(self) -> dict:
        out = {"n": self.model.n, "alphas": list(self.model.alphas), "word": self.word.to_list(), "seed": self.seed}
        if self.label:
            out["label"] = self.label
        if self.word.weight != 1:
            w = complex(self.word.weight)
            out["weight"] = [w.real, w.imag]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationCase":
        weight = data.get("weight", 1.0)
        if isinstance(weight, (list, tuple)):
            weight = complex(*weight)
        model = LoopHolonomyModel(int(data["n"]), tuple(data.get("alphas", ())))
        word = WedgeWord(tuple(BasisCovector(int(a), int(k)) for a, k in data.get("word", ())), weight)
        return cls(model, word, int(data.get("seed", 0)), data.get("label", ""))


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


@dataclass
class CaseReport:
    case: VerificationCase
    q_fast: complex
    q_oracle: complex
    top: complex
    abs_diffs: dict[str, float]
    rel_diffs: dict[str, float]
    passed: bool
    diagnostics: dict = field(default_factory=dict)
    error: str = ""

    @property
    def max_rel_diff(self) -> float:
        return max(self.rel_diffs.values(), default=0.0)

    def to_dict(self) -> dict:
        return {
            "case": self.case.to_dict(),
            "q_fast": _pair(self.q_fast),
            "q_oracle": _pair(self.q_oracle),
            "top": _pair(self.top),
            "abs_diffs": self.abs_diffs,
            "rel_diffs": self.rel_diffs,
            "pass": self.passed,
            "diagnostics": self.diagnostics,
            **({"error": self.error} if self.error else {}),
        }


def verify_case(case: VerificationCase, tol: float = REL_TOL) -> CaseReport:
    """Evaluate all three paths; failures are reported, never raised."""
    frame = ReferenceFrame(case.model)
    try:
        fast = q_coefficient_detail(frame, case.word)
        oracle = q_coefficient_oracle(frame, case.word)
        top = loop_top_degree_detail(frame, case.word)
    except (ValueError, ArithmeticError) as exc:
        nan = complex(math.nan, math.nan)
        return CaseReport(case, nan, nan, nan, {}, {}, False, {}, f"{type(exc).__name__}: {exc}")
    values = {"q_fast": fast.value, "q_oracle": oracle, "top": top.value}
    if case.expected is not None:
        values["expected"] = case.expected
    scale = 1.0 + max(abs(v) for v in values.values())
    abs_diffs, rel_diffs = {}, {}
    names = list(values)
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            diff = abs(values[x] - values[y])
            abs_diffs[f"{x}-{y}"] = diff
            rel_diffs[f"{x}-{y}"] = diff / scale
    passed = all(r <= tol for r in rel_diffs.values())
    diagnostics = {
        "eta0": top.eta0,
        "kernel_pairing": top.kernel_pairing,
        "sort_sign": fast.sort_sign,
        "axis_counts": {str(j): c for j, c in fast.axis_counts.items() if c},
        "axis_J": {str(j): _pair(v) for j, v in fast.axis_j.items() if fast.axis_counts[j]},
    }
    return CaseReport(case, fast.value, oracle, top.value, abs_diffs, rel_diffs, passed, diagnostics)


def _random_model(rng: np.random.Generator, config: SweepConfig) -> LoopHolonomyModel:
    n = int(rng.integers(2, config.max_n + 1))
    m = int(rng.integers(0, min(config.max_m, n // 2) + 1))
    alphas = rng.uniform(ALPHA_MARGIN, 1 - ALPHA_MARGIN, size=m)
    return LoopHolonomyModel(n, tuple(float(a) for a in alphas))


def _random_word(rng: np.random.Generator, model: LoopHolonomyModel, config: SweepConfig) -> WedgeWord:
    """Mix of structured (likely nonzero) and unstructured words."""
    n, m, kmax, cap = model.n, model.m, config.max_k, config.max_N

    def freq(nonzero: bool = False) -> int:
        if nonzero and kmax == 0:
            return 0
        while True:
            k = int(rng.integers(-kmax, kmax + 1))
            if k or not nonzero:
                return k

    factors: list[BasisCovector] = []
    if rng.random() < 0.7:
        # structured: kernel zero modes plus pairs that survive the vanishing laws
        if rng.random() < 0.85:
            factors += [BasisCovector(j, 0) for j in range(2 * m + 1, n + 1)]
        while len(factors) < cap and rng.random() < 0.75:
            r = rng.random()
            if r < 0.4 and kmax:
                j, k = int(rng.integers(1, n + 1)), freq(nonzero=True)
                factors += [BasisCovector(j, k), BasisCovector(j, -k)]
            elif r < 0.6 and m:
                p = int(rng.integers(1, m + 1))
                factors += [BasisCovector(2 * p - 1, 0), BasisCovector(2 * p, 0)]
            elif r < 0.8 and m:
                j = int(rng.integers(1, 2 * m + 1))
                factors += [BasisCovector(j, freq()), BasisCovector(j, 0)]
            else:
                factors.append(BasisCovector(int(rng.integers(1, n + 1)), freq()))
        factors = factors[:cap]
    else:
        size = int(rng.integers(0, cap + 1))
        factors = [BasisCovector(int(rng.integers(1, n + 1)), freq()) for _ in range(size)]
    order = rng.permutation(len(factors))
    return WedgeWord(tuple(factors[i] for i in order))


def case_from_seed(case_seed: int, config: SweepConfig) -> VerificationCase:
    rng = np.random.default_rng(case_seed)
    model = _random_model(rng, config)
    return VerificationCase(model, _random_word(rng, model, config), case_seed)


def generate_cases(config: SweepConfig, count: int | None = None) -> list[VerificationCase]:
    """Seeded cases; each one is reproducible from its own ``seed`` field."""
    config.validate()
    count = config.count if count is None else count
    if count < 0:
        raise ConfigError("count must be >= 0")
    seeds = np.random.SeedSequence(config.seed).generate_state(count, dtype=np.uint32) if count else []
    return [case_from_seed(int(s), config) for s in seeds]


def curated_cases() -> list[VerificationCase]:
    """Hand-checked cases with known values."""
    third, quarter = LoopHolonomyModel(2, (1 / 3,)), LoopHolonomyModel(3, (0.25,))
    two_planes = LoopHolonomyModel(4, (0.3, 0.7))
    u = 1 / (2j * math.pi)
    root3 = math.sqrt(3)
    e = lambda *pairs: WedgeWord(tuple(BasisCovector(a, k) for a, k in pairs))  # noqa: E731
    sin_prod = math.prod(2 * math.sin(math.pi * a) for a in two_planes.alphas)
    return [
        VerificationCase(third, e(), label="empty word, one plane", expected=root3),
        VerificationCase(third, e((1, 1), (1, -1)), label="one frequency pair", expected=root3 * u),
        VerificationCase(third, e((1, 1)), label="odd length", expected=0),
        VerificationCase(third, e((2, 2), (1, 0), (1, 3)), label="odd length, three factors", expected=0),
        VerificationCase(quarter, e((3, 0)), label="kernel zero mode", expected=math.sqrt(2)),
        VerificationCase(quarter, e(), label="empty word with kernel", expected=0),
        VerificationCase(two_planes, e(), label="empty word, two planes", expected=sin_prod),
        VerificationCase(third, e((1, 0), (2, 0)), label="plane zero modes",
                         expected=root3 * 0.5 / math.tan(math.pi / 3)),
        VerificationCase(third, e((1, 1), (1, 1)), label="repeated factor", expected=0),
        VerificationCase(LoopHolonomyModel(2, (0.5,)), e((1, 2), (1, -2)), label="half turn", expected=2 * u / 2),
    ]


def _run(case: VerificationCase, tol: float) -> CaseReport:
    return verify_case(case, tol)


def iter_reports(cases: list[VerificationCase], jobs: int = 1, tol: float = REL_TOL) -> Iterator[CaseReport]:
    """Reports in case order, computed serially or on a process pool."""
    if jobs <= 1 or len(cases) < 2:
        for c in cases:
            yield verify_case(c, tol)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_run, cases, [tol] * len(cases), chunksize=max(1, len(cases) // (4 * jobs)))


def sweep(
    config: SweepConfig,
    cases: Iterable[VerificationCase] | None = None,
    emit: Callable[[dict], None] | None = None,
) -> dict:
    """Run the curated corpus (if enabled) plus generated cases.

    ``emit`` receives one JSON-ready dict per case, in order.  Returns the
    aggregate ``{total, passed, failed, max_rel_diff}``.
    """
    config.validate()
    if cases is None:
        cases = (curated_cases() if config.curated else []) + generate_cases(config)
    cases = list(cases)
    total = passed = 0
    worst = 0.0
    for report in iter_reports(cases, config.jobs, config.tol):
        total += 1
        passed += report.passed
        if not report.error:
            worst = max(worst, report.max_rel_diff)
        if emit is not None:
            emit(report.to_dict())
    return {"total": total, "passed": passed, "failed": total - passed, "max_rel_diff": worst}


def config_dict(config: SweepConfig) -> dict:
    return asdict(config)
