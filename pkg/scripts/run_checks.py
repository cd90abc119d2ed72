"""Run every check suite at its default size and write one JSON report per suite.

    python3 scripts/run_checks.py --out results/ [--seed 0] [--only stability duality]
"""
import argparse
import json
import sys
import time
from pathlib import Path

from amn.checks import SUITES, run_suite


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--only", nargs="+", choices=SUITES)
    args = ap.parse_args(argv)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    failed = []
    for name in args.only or SUITES:
        t0 = time.perf_counter()
        rep = run_suite(name, seed=args.seed, threads=args.threads)
        secs = time.perf_counter() - t0
        (out / f"{name}.json").write_text(json.dumps(rep.to_json(), indent=1, sort_keys=True) + "\n")
        print(f"{'PASS' if rep.ok else 'FAIL'}  {rep.summary()}  [{secs:.1f}s]", flush=True)
        if not rep.ok:
            failed.append(name)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
