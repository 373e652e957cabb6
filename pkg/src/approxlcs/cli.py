"""Command-line front end: run, audit, bench, selftest."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .audit import SEED_ENV_VAR, bench, bench_csv, run_audit, write_jsonl
from .bitstrings import BitStringView
from .editdistance import parse_estimator
from .engine import approx_lcs
from .errors import ApproxLcsError
from .generators import InstanceSpec
from .oracles import fact1_upper
from .params import derive_params


def _load_string(path: str) -> BitStringView:
    return BitStringView.from_text(Path(path).read_text(encoding="ascii"))


def _cmd_run(args) -> int:
    a = _load_string(args.a)
    b = _load_string(args.b)
    estimator = parse_estimator(args.estimator)
    witness, report = approx_lcs(a, b, estimator, mode=args.mode)
    params = derive_params(len(a), (a.ones(), a.zeros(), b.ones(), b.zeros()), estimator.factor)
    payload = {
        "lcs_estimate": len(witness),
        "witness_a": witness.a_indices.tolist(),
        "witness_b": witness.b_indices.tolist(),
        "branch": report.to_json(),
        "params": params.to_json(),
        "fact1_upper": fact1_upper(a, b),
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"n              : {len(a)}")
        print(f"lcs_estimate   : {len(witness)}")
        print(f"branch         : {report.branch_id}")
        print(f"fact1_upper    : {payload['fact1_upper']}")
        print(f"guaranteed_lb  : {report.guaranteed_lower_bound}")
    return 0


def _load_suite(path: str) -> list[InstanceSpec]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(data, dict):
        data = data["specs"]
    return [InstanceSpec.from_json(obj) for obj in data]


def _cmd_audit(args) -> int:
    specs = _load_suite(args.suite)
    records, summary = run_audit(
        specs,
        args.estimator,
        mode=args.mode,
        machine=args.machine_params,
        timing=args.timing,
    )
    if args.out == "-":
        write_jsonl(records, summary, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_jsonl(records, summary, fh)
    n_viol = len(summary["violations"])
    print(
        f"audited {summary['records']} instances, min ratio {summary['ratio']['min']}, "
        f"{n_viol} violations",
        file=sys.stderr,
    )
    return 1 if n_viol else 0


def _cmd_bench(args) -> int:
    n_values = [int(x) for x in args.n.split(",") if x.strip()]
    if not n_values:
        raise ApproxLcsError("no sizes given")
    rows = bench(n_values, args.estimator, args.reps, generator=args.generator)
    text = bench_csv(rows)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return 0


def _cmd_selftest(args) -> int:
    from . import selftest

    return selftest.run(verbose=not args.quiet)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="approxlcs",
        description=(
            "Better-than-half approximate LCS for binary strings. "
            f"Set {SEED_ENV_VAR} to override every suite seed."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="approximate the LCS of two string files")
    p.add_argument("--a", required=True, help="file holding the first 0/1 line")
    p.add_argument("--b", required=True, help="file holding the second 0/1 line")
    p.add_argument("--estimator", default="exact", help="exact | adversarial:<c>[:<slack-exponent>]")
    p.add_argument("--mode", choices=("paper", "ensemble"), default="paper")
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("audit", help="run a suite against the exact oracle")
    p.add_argument("--suite", required=True, help="JSON file with instance specs")
    p.add_argument("--estimator", default="exact")
    p.add_argument("--mode", choices=("paper", "ensemble"), default="paper")
    p.add_argument("--out", default="-", help="JSON-lines output path (- for stdout)")
    p.add_argument("--machine-params", action="store_true", help="disable the exact-small gate")
    p.add_argument("--timing", action="store_true", help="include wall times (breaks byte-reproducibility)")
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("bench", help="scaling table as CSV")
    p.add_argument("--n", required=True, help="comma-separated sizes")
    p.add_argument("--reps", type=int, required=True, help="repetitions per size (>= 1)")
    p.add_argument("--estimator", default="exact")
    p.add_argument("--generator", default="perfectly_unbalanced(1/4)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("selftest", help="fast exhaustive small-instance checks")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ApproxLcsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
