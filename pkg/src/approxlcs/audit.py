"""Ratio auditing against the exact oracle, JSON-lines reporting, and timing.

Reports are deterministic for a fixed suite: records follow spec order and
wall times are omitted unless explicitly requested, so reruns are
byte-identical.
"""

from __future__ import annotations

import json
import math
import os
import statistics
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable

from .bitstrings import BitStringView, verify_witness
from .editdistance import Estimator, TimedEstimator, parse_estimator
from .engine import BranchReport, approx_lcs, count_upper_bound
from .errors import ParameterError
from .generators import PRNG_ID, InstanceSpec, exhaustive_pairs, generate, parse_generator
from .oracles import check_oracle_feasible, lcs_length
from .params import derive_params, machine_params

SEED_ENV_VAR = "APPROXLCS_SEED"


@dataclass
class AuditRecord:
    instance: InstanceSpec
    index: int
    branch: BranchReport
    output_len: int
    oracle_len: int
    ratio: Fraction | None
    estimator_id: str
    wall_time: float | None
    violations: list[str]

    def to_json(self) -> dict:
        return {
            "instance": self.instance.to_json(),
            "index": self.index,
            "branch": self.branch.to_json(),
            "output_len": self.output_len,
            "oracle_len": self.oracle_len,
            "ratio": _frac_str(self.ratio),
            "estimator_id": self.estimator_id,
            "wall_time": self.wall_time,
            "violations": self.violations,
        }


def _frac_str(f: Fraction | None) -> str | None:
    return None if f is None else f"{f.numerator}/{f.denominator}"


def apply_seed_override(specs: list[InstanceSpec]) -> list[InstanceSpec]:
    """Replace every spec seed when the override env var is set."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return specs
    seed = int(raw)
    return [InstanceSpec(s.generator, s.n, seed) for s in specs]


def _iter_instances(specs: list[InstanceSpec]):
    """Expand exhaustive macros; yield (spec, index, a, b)."""
    for spec in specs:
        kind, args = parse_generator(spec.generator)
        if kind == "exhaustive":
            for i, (_, a, b) in enumerate(exhaustive_pairs(args[0])):
                yield spec, i, a, b
        else:
            yield spec, 0, *generate(spec)


def run_audit(
    specs: list[InstanceSpec],
    estimator: Estimator | str,
    mode: str = "paper",
    machine: bool = False,
    timing: bool = False,
) -> tuple[list[AuditRecord], dict]:
    """Run engine plus oracle over every instance and summarize ratios.

    machine=True disables the exact-small gate (branch-targeted studies).
    Violations never raise; they are recorded per instance and surfaced in
    the summary so the caller can choose the exit status.
    """
    if isinstance(estimator, str):
        estimator = parse_estimator(estimator)
    specs = apply_seed_override(specs)
    for spec in specs:
        check_oracle_feasible(spec.n)

    records: list[AuditRecord] = []
    for spec, index, a, b in _iter_instances(specs):
        n = len(a)
        t0 = time.perf_counter()
        params = None
        if n and machine:
            counts = (a.ones(), a.zeros(), b.ones(), b.zeros())
            params = machine_params(derive_params(n, counts, estimator.factor))
        witness, report = approx_lcs(a, b, estimator, mode=mode, params=params)
        dt = time.perf_counter() - t0

        oracle_len = lcs_length(a, b)
        out_len = len(witness)
        violations = []
        if not verify_witness(a, b, witness):
            violations.append("witness failed certification")
        upper = count_upper_bound(a, b)
        if out_len > upper:
            violations.append(f"output {out_len} exceeds count upper bound {upper}")
        if out_len > oracle_len:
            violations.append(f"output {out_len} exceeds exact LCS {oracle_len}")
        eps = derive_params(n, (a.ones(), a.zeros(), b.ones(), b.zeros()), estimator.factor).epsilon if n else Fraction(0)
        need = max(0, math.ceil((Fraction(1, 2) + eps) * oracle_len) - 1)
        if out_len < need:
            violations.append(f"output {out_len} below guarantee floor {need} (LCS {oracle_len})")
        if out_len < report.guaranteed_lower_bound:
            violations.append("output below branch floor")

        ratio = Fraction(out_len, oracle_len) if oracle_len else None
        records.append(
            AuditRecord(
                instance=spec,
                index=index,
                branch=report,
                output_len=out_len,
                oracle_len=oracle_len,
                ratio=ratio,
                estimator_id=estimator.estimator_id,
                wall_time=dt if timing else None,
                violations=violations,
            )
        )
    summary = summarize(records, estimator.estimator_id, mode)
    return records, summary


def _ratio_stats(ratios: list[Fraction]) -> dict:
    if not ratios:
        return {"count": 0, "min": None, "median": None}
    ordered = sorted(ratios)
    k = len(ordered)
    median = ordered[k // 2] if k % 2 else (ordered[k // 2 - 1] + ordered[k // 2]) / 2
    return {"count": k, "min": _frac_str(ordered[0]), "median": _frac_str(median)}


def summarize(records: list[AuditRecord], estimator_id: str, mode: str) -> dict:
    histogram: dict[str, int] = {}
    per_branch: dict[str, list[Fraction]] = {}
    violations = []
    ratios = []
    for rec in records:
        branch = rec.branch.branch_id
        histogram[branch] = histogram.get(branch, 0) + 1
        if rec.ratio is not None:
            ratios.append(rec.ratio)
            per_branch.setdefault(branch, []).append(rec.ratio)
        for v in rec.violations:
            violations.append({"instance": rec.instance.to_json(), "index": rec.index, "violation": v})
    return {
        "records": len(records),
        "estimator_id": estimator_id,
        "mode": mode,
        "prng": PRNG_ID,
        "seed_env": os.environ.get(SEED_ENV_VAR),
        "branch_histogram": dict(sorted(histogram.items())),
        "ratio": _ratio_stats(ratios),
        "ratio_per_branch": {k: _ratio_stats(v) for k, v in sorted(per_branch.items())},
        "violations": violations,
    }


def write_jsonl(records: Iterable[AuditRecord], summary: dict, fh: IO[str]) -> None:
    for rec in records:
        fh.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")
    fh.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")


# -- scaling table ------------------------------------------------------------


def bench(
    n_values: list[int],
    estimator: Estimator | str,
    repetitions: int,
    generator: str = "perfectly_unbalanced(1/4)",
    base_seed: int = 20_240_001,
) -> list[dict]:
    """Median per-size wall times: engine sans estimator, estimator, oracle.

    The oracle column is left empty above its feasibility cutoff.
    """
    if repetitions < 1:
        raise ParameterError("repetitions must be at least 1")
    if isinstance(estimator, str):
        estimator = parse_estimator(estimator)
    rows = []
    for n in n_values:
        engine_times, estimator_times, oracle_times = [], [], []
        for rep in range(repetitions):
            a, b = generate(InstanceSpec(generator, n, base_seed + rep))
            timed = TimedEstimator(estimator)
            t0 = time.perf_counter()
            approx_lcs(a, b, timed)
            total = time.perf_counter() - t0
            engine_times.append(total - timed.elapsed)
            estimator_times.append(timed.elapsed)
            try:
                check_oracle_feasible(n)
            except Exception:
                oracle_times.append(None)
            else:
                t0 = time.perf_counter()
                lcs_length(a, b)
                oracle_times.append(time.perf_counter() - t0)
        med = lambda xs: None if any(x is None for x in xs) else statistics.median(xs)
        rows.append(
            {
                "n": n,
                "engine_s": statistics.median(engine_times),
                "estimator_s": statistics.median(estimator_times),
                "oracle_s": med(oracle_times),
            }
        )
    return rows


def bench_csv(rows: list[dict]) -> str:
    lines = ["n,engine_s,estimator_s,oracle_s"]
    for r in rows:
        oracle = "" if r["oracle_s"] is None else f"{r['oracle_s']:.6f}"
        lines.append(f"{r['n']},{r['engine_s']:.6f},{r['estimator_s']:.6f},{oracle}")
    return "\n".join(lines) + "\n"
