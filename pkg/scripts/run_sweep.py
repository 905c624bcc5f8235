"""Run the three-way verification sweep and print a short summary.

    python3 scripts/run_sweep.py --seed 0 --count 2000 --jobs 4 --out sweep.jsonl
"""

import argparse
import json
import time
from collections import Counter

from looptop.verifier import SweepConfig, sweep


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-N", dest="max_N", type=int, default=6)
    p.add_argument("--out", help="optional JSON-lines report")
    args = p.parse_args()

    config = SweepConfig(seed=args.seed, count=args.count, jobs=args.jobs, max_N=args.max_N)
    nonzero, sizes, failures = Counter(), Counter(), []
    sink = open(args.out, "w") if args.out else None

    def emit(record: dict) -> None:
        size = len(record["case"]["word"])
        sizes[size] += 1
        if abs(complex(*record["top"])) > 1e-12:
            nonzero[size] += 1
        if not record["pass"]:
            failures.append(record["case"])
        if sink:
            sink.write(json.dumps(record) + "\n")

    start = time.perf_counter()
    summary = sweep(config, emit=emit)
    if sink:
        sink.close()
    print(json.dumps(summary))
    print(f"elapsed {time.perf_counter() - start:.1f}s")
    print("word length  cases  nonzero")
    for size in sorted(sizes):
        print(f"{size:>11}  {sizes[size]:>5}  {nonzero[size]:>7}")
    for case in failures[:10]:
        print("FAILED", json.dumps(case))


if __name__ == "__main__":
    main()
