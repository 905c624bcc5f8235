"""Command line interface; every subcommand prints JSON.

Complex numbers are written as ``[re, im]`` pairs.  Negative leading
values need the ``=`` form, e.g. ``--k=-1,1``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

import numpy as np

from .exactnum import laurent_to_complex
from .holonomy import (
    LoopHolonomyModel,
    spectrum,
    zeta_derivative_at_zero,
    zeta_det_closed,
    zeta_det_special_values,
    zeta_det_unreduced_vanishes,
)
from .pfaffian import pfaffian
from .qside import q_coefficient_detail, q_coefficient_oracle
from .simplex import check_frequencies, format_laurent, j_closed, j_oracle
from .topdegree import ReferenceFrame, WedgeWord, loop_top_degree_detail
from .verifier import ConfigError, SweepConfig, VerificationCase, sweep, verify_case

CONFIG_ENV = "LOOPTOP_VERIFY_CONFIG"


def _pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _ints(text: str) -> list[int]:
    text = text.strip()
    return [int(x) for x in text.split(",")] if text else []


def _floats(text: str) -> list[float]:
    text = text.strip()
    return [float(x) for x in text.split(",")] if text else []


def _print(obj) -> None:
    print(json.dumps(obj))


def _model(args) -> LoopHolonomyModel:
    return LoopHolonomyModel(args.n, tuple(_floats(args.alphas)))


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="dimension")
    p.add_argument("--alphas", default="", help="comma-separated rotation parameters in (0, 1)")


def cmd_jint(args) -> int:
    k = check_frequencies(_ints(args.k))
    value = j_oracle(k) if args.oracle else j_closed(k)
    out = {"k": list(k), "method": "oracle" if args.oracle else "closed"}
    if args.numeric:
        out["value"] = _pair(laurent_to_complex(value))
    else:
        out["value"] = format_laurent(value)
    _print(out)
    return 0


def cmd_zeta_det(args) -> int:
    model = _model(args)
    if args.method == "closed":
        value = zeta_det_closed(model)
    elif args.method == "special":
        value = zeta_det_special_values(model)
    else:
        value = float(np.exp(-zeta_derivative_at_zero(model)))
    _print({
        "value": value,
        "method": args.method,
        "model": model.to_dict(),
        "unreduced_is_zero": zeta_det_unreduced_vanishes(model),
    })
    return 0


def cmd_spectrum(args) -> int:
    model = _model(args)
    eig = spectrum(model, args.radius)
    _print({
        "radius": args.radius,
        "model": model.to_dict(),
        "eigenvalues": [{"value": _pair(lam), "multiplicity": mult} for lam, mult in eig],
        "count": sum(mult for _, mult in eig),
    })
    return 0


def cmd_topside(args) -> int:
    model = _model(args)
    word = WedgeWord.parse(args.word)
    detail = loop_top_degree_detail(ReferenceFrame(model), word)
    _print({"model": model.to_dict(), "word": word.to_list(), **detail.to_dict()})
    return 0


def _read_matrix(path: str):
    with (sys.stdin if path == "-" else open(path)) as fh:
        data = json.load(fh)
    rows = data["matrix"] if isinstance(data, dict) else data
    cplx = any(isinstance(x, list) for row in rows for x in row)
    if cplx:
        return np.array([[complex(*x) if isinstance(x, list) else complex(x) for x in row] for row in rows])
    return np.array(rows, dtype=float)


def cmd_pfaffian(args) -> int:
    a = _read_matrix(args.matrix)
    value = pfaffian(a) if a.size else 1.0
    _print({"value": _pair(value), "size": int(a.shape[0])})
    return 0


def cmd_qside(args) -> int:
    model = _model(args)
    word = WedgeWord.parse(args.word)
    frame = ReferenceFrame(model)
    if args.oracle:
        out = {"value": _pair(q_coefficient_oracle(frame, word)), "method": "oracle"}
    else:
        out = {**q_coefficient_detail(frame, word).to_dict(), "method": "fast"}
    _print({"model": model.to_dict(), "word": word.to_list(), **out})
    return 0


def _load_config(args) -> SweepConfig:
    path = args.config or os.environ.get(CONFIG_ENV)
    data = {}
    if path:
        with open(path) as fh:
            data = json.load(fh)
        data = {k.replace("-", "_"): v for k, v in data.items()}
    for key in ("seed", "count", "max_n", "max_m", "max_N", "max_k", "jobs", "tol"):
        val = getattr(args, key)
        if val is not None:
            data[key] = val
    if args.no_curated:
        data["curated"] = False
    return SweepConfig.from_dict(data)


def cmd_verify(args) -> int:
    out = open(args.out, "w") if args.out else sys.stdout

    def emit(record: dict) -> None:
        out.write(json.dumps(record) + "\n")

    try:
        if args.case:
            case = VerificationCase.from_dict(json.loads(args.case))
            report = verify_case(case)
            emit(report.to_dict())
            summary = {"total": 1, "passed": int(report.passed), "failed": int(not report.passed),
                       "max_rel_diff": report.max_rel_diff}
        else:
            summary = sweep(_load_config(args), emit=emit)
        summary = {"summary": summary}
        emit(summary)
    finally:
        if out is not sys.stdout:
            out.close()
    if args.out:
        _print(summary)
    return 0 if summary["summary"]["failed"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="looptop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jint", help="antisymmetrized simplex integral")
    p.add_argument("--k", required=True, help="comma-separated integer frequencies (use --k=-1,1)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="print as 'r * u^p' (default)")
    mode.add_argument("--numeric", action="store_true", help="print a complex float")
    p.add_argument("--oracle", action="store_true", help="brute-force permutation sum")
    p.set_defaults(func=cmd_jint)

    p = sub.add_parser("zeta-det", help="zeta-regularized determinant")
    _add_model_args(p)
    p.add_argument("--method", choices=["closed", "special", "numeric"], default="closed")
    p.set_defaults(func=cmd_zeta_det)

    p = sub.add_parser("spectrum", help="eigenvalues of the covariant derivative")
    _add_model_args(p)
    p.add_argument("--radius", type=float, required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("topside", help="top-degree coefficient of a wedge word")
    _add_model_args(p)
    p.add_argument("--word", default="", help='factors "axis:k,...", leftmost first')
    p.set_defaults(func=cmd_topside)

    p = sub.add_parser("pfaffian", help="Pfaffian of a skew matrix in a JSON file")
    p.add_argument("--matrix", required=True, help="JSON file (list of rows, or {'matrix': rows}); '-' for stdin")
    p.set_defaults(func=cmd_pfaffian)

    p = sub.add_parser("qside", help="supertrace functional of a wedge word")
    _add_model_args(p)
    p.add_argument("--word", default="", help='factors "axis:k,...", leftmost first')
    p.add_argument("--oracle", action="store_true", help="literal permutation sum")
    p.set_defaults(func=cmd_qside)

    p = sub.add_parser("verify", help="three-way check on random and curated cases")
    p.add_argument("--config", help=f"JSON config (default from ${CONFIG_ENV})")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--max-n", dest="max_n", type=int)
    p.add_argument("--max-m", dest="max_m", type=int)
    p.add_argument("--max-N", dest="max_N", type=int)
    p.add_argument("--max-k", dest="max_k", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--no-curated", action="store_true", help="skip the curated corpus")
    p.add_argument("--out", help="write JSON lines here instead of stdout")
    p.add_argument("--case", help="verify one case given as JSON")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        if isinstance(exc, ConfigError):
            print(f"config error: {exc}", file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
