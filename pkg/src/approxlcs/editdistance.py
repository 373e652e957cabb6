"""Exact insertion/deletion edit distance and the estimator black box.

The distance engine walks the diagonal frontier, expanding one edit cost at a
time with vectorized snake extension, so the work is O((|a|+|b|)*D). Alignment
backtracking keeps the per-cost frontiers, O(D^2) ints; above a memory cap the
witness comes from the word-parallel subsequence routine instead and the two
engines cross-check each other through the distance identity.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Protocol

import numpy as np

from .bitstrings import BitStringView, SubsequenceWitness, verify_witness
from .errors import EstimatorError, ParameterError
from .exactsmall import exact_common_subsequence

# Above this edit cost the O(D^2) backtrack frontiers are dropped in favor of
# the linear-space fallback witness.
TRACE_CAP = 4096

_NEG = -(10**9)


def _run_end_table(bits: np.ndarray) -> np.ndarray:
    """Exclusive end of the symbol run containing each position."""
    n = len(bits)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    boundary = np.flatnonzero(np.diff(bits) != 0) + 1
    ends = np.append(boundary, n)
    run_id = np.zeros(n, dtype=np.int64)
    run_id[boundary] = 1
    np.cumsum(run_id, out=run_id)
    return ends[run_id]


def _frontier_walk(
    abits: np.ndarray, bbits: np.ndarray, keep_trace: bool
) -> tuple[int, list[np.ndarray] | None]:
    """Distance between the stripped strings; optionally the frontier history."""
    n, m = len(abits), len(bbits)
    run_a = _run_end_table(abits)
    run_b = _run_end_table(bbits)
    goal_k = n - m
    max_d = n + m

    cap = 256
    off = cap
    v = np.full(2 * cap + 1, _NEG, dtype=np.int64)
    trace: list[np.ndarray] | None = [] if keep_trace else None

    for d in range(max_d + 1):
        if d >= cap:
            grown = np.full(4 * cap + 1, _NEG, dtype=np.int64)
            grown[cap : 3 * cap + 1] = v
            v = grown
            off = 2 * cap
            cap *= 2
        if d == 0:
            x = np.zeros(1, dtype=np.int64)
        else:
            vm = v[off - d - 1 : off + d : 2]
            vp = v[off - d + 1 : off + d + 2 : 2]
            take_up = vm < vp
            take_up[0] = True
            take_up[-1] = False
            x = np.where(take_up, vp, vm + 1)
        ks = np.arange(-d, d + 1, 2, dtype=np.int64)
        y = x - ks
        while True:
            can = (x < n) & (y < m)
            if not can.any():
                break
            ci = np.flatnonzero(can)
            eq = abits[x[ci]] == bbits[y[ci]]
            hit = ci[eq]
            if not len(hit):
                break
            jump = np.minimum(run_a[x[hit]] - x[hit], run_b[y[hit]] - y[hit])
            x[hit] += jump
            y[hit] += jump
        v[off - d : off + d + 1 : 2] = x
        if trace is not None:
            if d <= TRACE_CAP:
                trace.append(x.astype(np.int64))
            else:
                trace = None
        if abs(goal_k) <= d and (goal_k + d) % 2 == 0 and x[(goal_k + d) >> 1] >= n:
            return d, trace
    raise AssertionError("frontier walk failed to terminate")  # pragma: no cover


def _backtrack(trace: list[np.ndarray], n: int, m: int) -> list[tuple[int, int]]:
    pairs: list[tuple[int, int]] = []
    x, y = n, m
    for d in range(len(trace) - 1, 0, -1):
        prev = trace[d - 1]
        k = x - y

        def val(kk: int) -> int:
            if -(d - 1) <= kk <= d - 1:
                return int(prev[(kk + d - 1) >> 1])
            return _NEG

        vm, vp = val(k - 1), val(k + 1)
        if k == -d or (k != d and vm < vp):
            prev_x, prev_k = vp, k + 1
        else:
            prev_x, prev_k = vm, k - 1
        prev_y = prev_x - prev_k
        while x > prev_x and y > prev_y:
            pairs.append((x - 1, y - 1))
            x -= 1
            y -= 1
        x, y = prev_x, prev_y
    while x > 0 and y > 0:
        pairs.append((x - 1, y - 1))
        x -= 1
        y -= 1
    pairs.reverse()
    return pairs


def indel_distance(a: BitStringView, b: BitStringView) -> int:
    """Minimum insertions plus deletions transforming a into b."""
    pre, tail_a, tail_b = _strip(a.bits, b.bits)
    d, _ = _frontier_walk(tail_a, tail_b, keep_trace=False)
    return d


def _strip(abits: np.ndarray, bbits: np.ndarray) -> tuple[int, np.ndarray, np.ndarray]:
    """Drop the shared prefix and suffix; they are matched for free."""
    n, m = len(abits), len(bbits)
    lim = min(n, m)
    if lim == 0:
        return 0, abits, bbits
    neq = np.flatnonzero(abits[:lim] != bbits[:lim])
    pre = int(neq[0]) if len(neq) else lim
    ra, rb = abits[pre:], bbits[pre:]
    lim2 = min(len(ra), len(rb))
    if lim2:
        neq2 = np.flatnonzero(ra[len(ra) - lim2 :][::-1] != rb[len(rb) - lim2 :][::-1])
        suf = int(neq2[0]) if len(neq2) else lim2
        if suf:
            ra, rb = ra[: len(ra) - suf], rb[: len(rb) - suf]
    return pre, ra, rb


def exact_edit_distance(a: BitStringView, b: BitStringView) -> tuple[int, SubsequenceWitness]:
    """Exact indel distance with a matched-positions witness.

    The witness always has length (|a|+|b|-D)/2; when the frontier history
    outgrows the memory cap the witness comes from the word-parallel
    subsequence routine and the identity is asserted instead.
    """
    pre, ta, tb = _strip(a.bits, b.bits)
    suf = (len(a) - pre) - len(ta)
    d, trace = _frontier_walk(ta, tb, keep_trace=True)

    if trace is not None:
        core = _backtrack(trace, len(ta), len(tb))
        ai = [p for p in range(pre)] + [pre + i for i, _ in core]
        bi = [p for p in range(pre)] + [pre + j for _, j in core]
        ai += [len(a) - suf + t for t in range(suf)]
        bi += [len(b) - suf + t for t in range(suf)]
        witness = SubsequenceWitness(np.array(ai, dtype=np.int64), np.array(bi, dtype=np.int64))
    else:
        witness = exact_common_subsequence(a, b)
    if 2 * len(witness) != len(a) + len(b) - d:
        raise AssertionError(
            f"distance/witness identity broke: D={d}, |w|={len(witness)}, "
            f"lengths {len(a)},{len(b)}"
        )  # pragma: no cover
    return d, witness


# -- estimator contract ----------------------------------------------------


@dataclass(frozen=True)
class EditEstimate:
    """Estimator output for an equal-length pair.

    claimed_distance is in deletion units: n minus the claimed common length,
    so the certified common length is n - claimed_distance. The claim may
    overshoot the truth (never undershoot) and any attached witness must
    certify at least the claimed common length.
    """

    n: int
    claimed_distance: int
    witness: SubsequenceWitness | None
    estimator_id: str

    def __post_init__(self):
        if not 0 <= self.claimed_distance <= self.n:
            raise EstimatorError(
                f"claimed distance {self.claimed_distance} outside [0, {self.n}]"
            )
        if self.witness is not None and len(self.witness) < self.certified_length:
            raise EstimatorError(
                f"witness of length {len(self.witness)} cannot certify "
                f"claimed common length {self.certified_length}"
            )

    @property
    def certified_length(self) -> int:
        return self.n - self.claimed_distance


class Estimator(Protocol):
    estimator_id: str
    factor: Fraction

    def estimate(self, a: BitStringView, b: BitStringView) -> EditEstimate: ...


class ExactEstimator:
    """The factor-1 instantiation: exact indel distance with full alignment."""

    estimator_id = "exact"
    factor = Fraction(1)

    def estimate(self, a: BitStringView, b: BitStringView) -> EditEstimate:
        n = len(a)
        d, witness = exact_edit_distance(a, b)
        if d % 2:
            raise EstimatorError("indel distance of an equal-length pair must be even")
        return EditEstimate(n, d // 2, witness, self.estimator_id)


def _int_pow_floor(n: int, e: Fraction) -> int:
    """floor(n ** e) computed exactly for rational e in [0, 1)."""
    if n <= 0 or e == 0:
        return 1 if n > 0 else 0
    p, q = e.numerator, e.denominator
    target = n**p
    x = int(round(n ** (p / q)))
    while x > 0 and x**q > target:
        x -= 1
    while (x + 1) ** q <= target:
        x += 1
    return x


class AdversarialEstimator:
    """Degrades an inner estimate to the worst claim a factor-c contract allows.

    The claim becomes min(floor(c * inner) + slack(n), n) and the witness is
    the inner alignment truncated to the degraded certified length, so the
    contract invariants hold by construction. With an exact inner engine this
    simulates any factor c >= 1. Optional sink receives
    (n, true_distance, claimed) per call.
    """

    def __init__(
        self,
        inner: Estimator | None = None,
        c: Fraction | int = 1,
        slack_exponent: Fraction | None = None,
        sink: Callable[[int, int, int], None] | None = None,
    ):
        c = Fraction(c)
        if c < 1:
            raise ParameterError(f"degradation factor must be >= 1, got {c}")
        if slack_exponent is not None and not 0 <= slack_exponent < 1:
            raise ParameterError("slack exponent must lie in [0, 1)")
        self.inner = inner if inner is not None else ExactEstimator()
        self.factor = c
        self.slack_exponent = slack_exponent
        self.sink = sink
        tag = f"adversarial:{c}"
        if slack_exponent is not None:
            tag += f":{slack_exponent}"
        self.estimator_id = tag

    def slack(self, n: int) -> int:
        if self.slack_exponent is None:
            return 0
        return _int_pow_floor(n, self.slack_exponent)

    def estimate(self, a: BitStringView, b: BitStringView) -> EditEstimate:
        n = len(a)
        base = self.inner.estimate(a, b)
        true_d = base.claimed_distance
        claimed = min((self.factor * true_d).__floor__() + self.slack(n), n)
        if claimed < true_d:  # cannot happen with factor >= 1; guard the contract
            raise EstimatorError("degraded claim undercut the true distance")
        witness = base.witness.truncated(n - claimed) if base.witness is not None else None
        if self.sink is not None:
            self.sink(n, true_d, claimed)
        return EditEstimate(n, claimed, witness, self.estimator_id)


class TimedEstimator:
    """Wrapper that accumulates wall time spent inside the inner estimator."""

    def __init__(self, inner: Estimator):
        self.inner = inner
        self.estimator_id = inner.estimator_id
        self.factor = inner.factor
        self.elapsed = 0.0
        self.calls = 0

    def estimate(self, a: BitStringView, b: BitStringView) -> EditEstimate:
        t0 = time.perf_counter()
        try:
            return self.inner.estimate(a, b)
        finally:
            self.elapsed += time.perf_counter() - t0
            self.calls += 1


def approx_ed_value(a: BitStringView, b: BitStringView, estimator: Estimator) -> EditEstimate:
    """Invoke the estimator on an equal-length pair and certify its output."""
    if len(a) != len(b):
        raise ParameterError("the estimator contract covers equal-length pairs only")
    est = estimator.estimate(a, b)
    if est.witness is not None and not verify_witness(a, b, est.witness):
        raise EstimatorError(f"estimator {est.estimator_id} returned an invalid witness")
    return est


def parse_estimator(selector: str) -> Estimator:
    """Build an estimator from a CLI selector.

    Grammar: "exact" or "adversarial:<c>[:<slack-exponent>]"; the factor and
    exponent accept integers, decimals, or p/q rationals. Omitting the
    exponent means zero additive slack.
    """
    parts = selector.split(":")
    if parts[0] == "exact" and len(parts) == 1:
        return ExactEstimator()
    if parts[0] == "adversarial" and 2 <= len(parts) <= 3:
        try:
            c = Fraction(parts[1])
            e = Fraction(parts[2]) if len(parts) == 3 else None
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"bad estimator selector {selector!r}: {exc}") from None
        return AdversarialEstimator(c=c, slack_exponent=e)
    raise ParameterError(f"unknown estimator selector {selector!r}")


def ed_lcs_identity_check(a: BitStringView, b: BitStringView, lcs_len: int | None = None) -> bool:
    """Cross-oracle check: D == |a| + |b| - 2 * LCS. Expected always true."""
    if lcs_len is None:
        from .oracles import lcs_length  # auditor-facing; engine never calls this

        lcs_len = lcs_length(a, b)
    return indel_distance(a, b) == len(a) + len(b) - 2 * lcs_len
