#!/usr/bin/env python3
"""Build and run a mixed audit suite; writes JSON-lines plus a summary.

Handy for ratio studies outside the test suite, e.g.:

    python scripts/audit_suites.py --per-generator 500 --estimator adversarial:3 --out audit.jsonl
"""

import argparse
import json
import sys

import numpy as np

from approxlcs.audit import run_audit, write_jsonl
from approxlcs.generators import InstanceSpec


def build_suite(per_generator: int, n_lo: int, n_hi: int, base_seed: int) -> list[InstanceSpec]:
    rotations = [
        "uniform(1/2,1/2)",
        "uniform(1/4,3/4)",
        "perfectly_unbalanced(1/20)",
        "perfectly_unbalanced(1/4)",
        "planted_lcs(3/5)",
    ]
    rng = np.random.default_rng(base_seed)
    specs = []
    for g, generator in enumerate(rotations):
        sizes = rng.integers(n_lo, n_hi + 1, per_generator)
        specs += [
            InstanceSpec(generator, int(sizes[i]), base_seed + g * per_generator + i)
            for i in range(per_generator)
        ]
    return specs


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-generator", type=int, default=200)
    ap.add_argument("--n-lo", type=int, default=50)
    ap.add_argument("--n-hi", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--estimator", default="exact")
    ap.add_argument("--mode", choices=("paper", "ensemble"), default="paper")
    ap.add_argument("--machine-params", action="store_true")
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    specs = build_suite(args.per_generator, args.n_lo, args.n_hi, args.seed)
    records, summary = run_audit(
        specs, args.estimator, mode=args.mode, machine=args.machine_params
    )
    if args.out == "-":
        write_jsonl(records, summary, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_jsonl(records, summary, fh)
    print(json.dumps(summary["ratio"] | {"violations": len(summary["violations"])}), file=sys.stderr)
    return 1 if summary["violations"] else 0


if __name__ == "__main__":
    raise SystemExit(main())
