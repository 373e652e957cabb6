#!/usr/bin/env python3
"""Scaling study: engine-sans-estimator wall time while n doubles."""

import argparse
import sys

from approxlcs.audit import bench, bench_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min-exp", type=int, default=15)
    ap.add_argument("--max-exp", type=int, default=20)
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--estimator", default="exact")
    ap.add_argument("--generator", default="perfectly_unbalanced(1/4)")
    args = ap.parse_args()

    sizes = [2**k for k in range(args.min_exp, args.max_exp + 1)]
    rows = bench(sizes, args.estimator, args.reps, generator=args.generator)
    sys.stdout.write(bench_csv(rows))
    engines = [r["engine_s"] for r in rows]
    for i in range(1, len(engines)):
        print(f"# doubling {sizes[i-1]} -> {sizes[i]}: x{engines[i]/engines[i-1]:.2f}", file=sys.stderr)


if __name__ == "__main__":
    main()
