"""The reduction engine: gates, normalization, tripartition, and case dispatch.

Everything outside the single estimator call is linear in the input length.
All branch decisions compare integer counts against exact rationals; there is
no floating point anywhere in the decision path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .bitstrings import (
    IDENTITY_TRANSFORM,
    BitStringView,
    SubsequenceWitness,
    SymmetryTransform,
    apply_transform,
    concat_witnesses,
    pull_back_witness,
    verify_witness,
)
from .editdistance import Estimator, approx_ed_value
from .errors import DispatchExhaustionError, ParameterError, WitnessError
from .exactsmall import exact_common_subsequence
from .params import ReductionParams, derive_params
from .subroutines import GreedySplit, best_match, greedy, match

BRANCH_DEGENERATE = "degenerate"
BRANCH_UNBALANCED = "unbalanced_gate"
BRANCH_BALANCED = "balanced_gate"
CASE_BRANCHES = (
    "case1a_greedy",
    "case1a_split",
    "case1b",
    "case1c",
    "case2_1a_greedy",
    "case2_1a_split",
    "case2_1b",
    "case2_1c",
    "case3",
    "case4",
    "case5",
    "case6",
)
ALL_BRANCHES = (BRANCH_DEGENERATE, BRANCH_UNBALANCED, BRANCH_BALANCED) + CASE_BRANCHES


@dataclass(frozen=True)
class TripartiteSplit:
    """Contiguous left/middle/right ranges with |left| = |right| = alpha_n."""

    left: tuple[int, int]
    middle: tuple[int, int]
    right: tuple[int, int]

    @classmethod
    def of(cls, n: int, alpha_n: int) -> "TripartiteSplit":
        if not 0 <= alpha_n * 2 <= n:
            raise ParameterError(f"alpha_n={alpha_n} does not fit n={n}")
        return cls((0, alpha_n), (alpha_n, n - alpha_n), (n - alpha_n, n))


@dataclass(frozen=True)
class Case1aQuantities:
    """Split-derived bookkeeping for the greedy-vs-recurse decision."""

    x: int
    y: int
    z: int
    split: GreedySplit

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y, "z": self.z, "split_point": self.split.split_point}


@dataclass(frozen=True)
class BranchReport:
    branch_id: str
    transform: SymmetryTransform
    quantities: Optional[Case1aQuantities]
    guaranteed_lower_bound: int
    upper_bound: int

    def to_json(self) -> dict:
        return {
            "branch_id": self.branch_id,
            "transform": self.transform.to_json(),
            "quantities": self.quantities.to_json() if self.quantities else None,
            "guaranteed_lower_bound": self.guaranteed_lower_bound,
            "upper_bound": self.upper_bound,
        }


def count_upper_bound(a: BitStringView, b: BitStringView) -> int:
    return min(a.zeros(), b.zeros()) + min(a.ones(), b.ones())


# -- gates ------------------------------------------------------------------


def unbalanced_gate(
    a: BitStringView, b: BitStringView, params: ReductionParams
) -> Optional[SubsequenceWitness]:
    """Single-symbol match when ones(a) and zeros(b) are visibly apart.

    Fires on strict |1(a) - 0(b)| > delta * alpha_n; the boundary stays with
    the case machine.
    """
    if abs(a.ones() - b.zeros()) > params.delta_alpha_n:
        return best_match(a, b)
    return None


def balanced_gate(
    a: BitStringView, b: BitStringView, params: ReductionParams, estimator: Estimator
) -> Optional[SubsequenceWitness]:
    """Near-balanced band: the better of the trivial match and the estimator.

    The band is widened by the delta slack so downstream branches may assume
    clean separation from one half.
    """
    n = params.n
    width = params.beta_prime_gate * n + params.delta_alpha_n
    if abs(a.zeros() * 2 - n) > width * 2:
        return None
    bm = best_match(a, b)
    est = approx_ed_value(a, b, estimator)
    if est.witness is not None and est.certified_length > len(bm):
        return est.witness.truncated(est.certified_length)
    return bm


def _balanced_gate_floor(params: ReductionParams) -> int:
    n = params.n
    width = params.beta_prime_gate * n + params.delta_alpha_n
    return max(0, math.ceil(n / 2 - width))


# -- normalization ----------------------------------------------------------


def normalize_orientation(
    a: BitStringView, b: BitStringView
) -> tuple[BitStringView, BitStringView, SymmetryTransform]:
    """Reorient the pair so ones(a) attains the four-way minimum count.

    Tie priority: ones(a), ones(b), zeros(a), zeros(b); the first minimal
    entry chooses the transform.
    """
    ones_a, ones_b = a.ones(), b.ones()
    zeros_a, zeros_b = len(a) - ones_a, len(b) - ones_b
    smallest = min(ones_a, ones_b, zeros_a, zeros_b)
    if ones_a == smallest:
        t = IDENTITY_TRANSFORM
    elif ones_b == smallest:
        t = SymmetryTransform(swap_ab=True)
    elif zeros_a == smallest:
        t = SymmetryTransform(complement=True)
    else:
        t = SymmetryTransform(swap_ab=True, complement=True)
    a2, b2 = apply_transform((a, b), t)
    return a2, b2, t


# -- case machine -----------------------------------------------------------


def _bm_or_estimate(
    a: BitStringView, b: BitStringView, estimator: Estimator
) -> SubsequenceWitness:
    """max of the trivial match and the estimator's certified value.

    When the certified value wins, the output is the estimator alignment cut
    to that value, keeping the emitted length equal to what the comparison
    actually used.
    """
    bm = best_match(a, b)
    est = approx_ed_value(a, b, estimator)
    if est.witness is not None and est.certified_length > len(bm):
        return est.witness.truncated(est.certified_length)
    return bm


def _case1_handler(
    a: BitStringView, b: BitStringView, params: ReductionParams, estimator: Estimator
) -> tuple[SubsequenceWitness, str, Case1aQuantities | None, int]:
    """Subdispatch once ones(right of b) and zeros(right of a) are both small.

    Returns (witness, branch, quantities, guaranteed floor) in this frame.
    """
    n, k = len(a), params.alpha_n
    half = params.half_alpha
    lm_a = a.substring(0, n - k)
    r_a = a.substring(n - k, n)
    ones_rb = b.ones(n - k, n)
    zeros_ra = r_a.zeros()
    in_band = (
        half - params.band(4) <= ones_rb <= half + params.band(4)
        and half - params.band(4) <= zeros_ra <= half + params.band(4)
    )
    if in_band:
        w_greedy, gsplit = greedy(lm_a, r_a, b)
        s = gsplit.split_point
        ones_lb_hat = b.ones(0, s)
        zeros_lb_hat = s - ones_lb_hat
        left_min_ones = min(lm_a.ones(), ones_lb_hat)
        left_min_zeros = min(lm_a.zeros(), zeros_lb_hat)
        ones_rb_hat = b.ones(s, n)
        zeros_rb_hat = (n - s) - ones_rb_hat
        quantities = Case1aQuantities(
            x=left_min_ones + left_min_zeros,
            y=min(r_a.ones(), ones_rb_hat) + min(r_a.zeros(), zeros_rb_hat),
            z=max(left_min_ones, left_min_zeros),
            split=gsplit,
        )
        # Hedge: both candidates are certified, so return the longer one and
        # let the z threshold only pick the designated branch label on ties.
        w_left = best_match(lm_a, b.substring(0, n - k))
        w_right = _bm_or_estimate(r_a, b.substring(n - k, n), estimator)
        w_split = concat_witnesses(w_left, w_right.shifted(n - k, n - k))
        designated_split = quantities.z <= half + params.band(10)
        if designated_split:
            witness, branch = (
                (w_split, "case1a_split")
                if len(w_split) >= len(w_greedy)
                else (w_greedy, "case1a_greedy")
            )
        else:
            witness, branch = (
                (w_greedy, "case1a_greedy")
                if len(w_greedy) >= len(w_split)
                else (w_split, "case1a_split")
            )
        floor = max(min(lm_a.ones(), b.ones()), min(lm_a.zeros(), b.zeros()))
        return witness, branch, quantities, floor
    if ones_rb < half - params.band(4) and zeros_ra <= half + params.band(2):
        w = match(a, b, 0)
        return w, "case1b", None, min(a.zeros(), b.zeros())
    if ones_rb <= half + params.band(2) and zeros_ra < half - params.band(4):
        w = match(a, b, 0)
        return w, "case1c", None, min(a.zeros(), b.zeros())
    raise AssertionError(
        f"subcase coverage lost: 1(R_B)={ones_rb}, 0(R_A)={zeros_ra}, alpha_n={k}"
    )  # pragma: no cover


def dispatch_case(
    a: BitStringView,
    b: BitStringView,
    split: TripartiteSplit,
    params: ReductionParams,
    estimator: Estimator,
) -> tuple[SubsequenceWitness, str, Case1aQuantities | None, int]:
    """Walk the six conditions in order on a pre-normalized pair.

    Returns (witness, branch, quantities, floor); the witness lives in the
    input frame except that case-2 family branches are already pulled back
    from the internal reversal.
    """
    n, k = len(a), params.alpha_n
    t1 = params.half_alpha + params.band(1)
    t2 = params.half_alpha + params.band(2)
    (l_lo, l_hi), (m_lo, m_hi), (r_lo, r_hi) = split.left, split.middle, split.right

    ones_lb = b.ones(l_lo, l_hi)
    ones_rb = b.ones(r_lo, r_hi)
    zeros_la = a.zeros(l_lo, l_hi)
    zeros_ra = a.zeros(r_lo, r_hi)

    if ones_rb <= t2 and zeros_ra <= t2:
        return _case1_handler(a, b, params, estimator)

    if ones_lb <= t2 and zeros_la <= t2:
        w_rev, branch, quantities, floor = _case1_handler(
            a.reverse(), b.reverse(), params, estimator
        )
        w = pull_back_witness(w_rev, SymmetryTransform(reverse=True), (n, n))
        return w, branch.replace("case1", "case2_1", 1), quantities, floor

    floor_sides = k + 2 * math.floor(params.beta_n) - 2

    if ones_rb <= t1 and ones_lb <= t1 and zeros_la > t2 and zeros_ra > t2:
        w = concat_witnesses(
            match(a.substring(l_lo, l_hi), b.substring(l_lo, l_hi), 0),
            match(a.substring(m_lo, m_hi), b.substring(m_lo, m_hi), 1).shifted(m_lo, m_lo),
            match(a.substring(r_lo, r_hi), b.substring(r_lo, r_hi), 0).shifted(r_lo, r_lo),
        )
        return w, "case3", None, max(0, floor_sides)

    if ones_rb > t2 and ones_lb > t2 and zeros_la <= t1 and zeros_ra <= t1:
        w = concat_witnesses(
            match(a.substring(l_lo, l_hi), b.substring(l_lo, l_hi), 1),
            match(a.substring(m_lo, m_hi), b.substring(m_lo, m_hi), 0).shifted(m_lo, m_lo),
            match(a.substring(r_lo, r_hi), b.substring(r_lo, r_hi), 1).shifted(r_lo, r_lo),
        )
        return w, "case4", None, max(0, floor_sides)

    if ones_rb > t1 and zeros_la > t1:
        w = concat_witnesses(
            match(a.substring(l_lo, l_hi), b.substring(0, r_lo), 0),
            match(a.substring(m_lo, n), b.substring(r_lo, n), 1).shifted(m_lo, r_lo),
        )
        return w, "case5", None, max(0, floor_sides)

    if ones_lb > t1 and zeros_ra > t1:
        w = concat_witnesses(
            match(a.substring(0, r_lo), b.substring(l_lo, l_hi), 1),
            match(a.substring(r_lo, n), b.substring(l_hi, n), 0).shifted(r_lo, l_hi),
        )
        return w, "case6", None, max(0, floor_sides)

    raise DispatchExhaustionError(ones_lb, ones_rb, zeros_la, zeros_ra)


# -- full pipeline ------------------------------------------------------------


def _finish(
    a: BitStringView,
    b: BitStringView,
    witness: SubsequenceWitness,
    report: BranchReport,
) -> tuple[SubsequenceWitness, BranchReport]:
    if not verify_witness(a, b, witness):
        raise WitnessError(f"branch {report.branch_id} produced an invalid witness")
    if not report.guaranteed_lower_bound <= len(witness) <= report.upper_bound:
        raise WitnessError(
            f"branch {report.branch_id} length {len(witness)} outside "
            f"[{report.guaranteed_lower_bound}, {report.upper_bound}]"
        )
    return witness, report


def _paper_pipeline(
    a: BitStringView,
    b: BitStringView,
    estimator: Estimator,
    params: ReductionParams,
) -> tuple[SubsequenceWitness, BranchReport]:
    n = params.n
    upper = count_upper_bound(a, b)

    if params.alpha_n <= params.degenerate_threshold:
        w = exact_common_subsequence(a, b)
        return _finish(a, b, w, BranchReport(BRANCH_DEGENERATE, IDENTITY_TRANSFORM, None, len(w), upper))

    w = unbalanced_gate(a, b, params)
    if w is not None:
        return _finish(a, b, w, BranchReport(BRANCH_UNBALANCED, IDENTITY_TRANSFORM, None, len(w), upper))

    w = balanced_gate(a, b, params, estimator)
    if w is not None:
        floor = min(_balanced_gate_floor(params), len(w))
        return _finish(a, b, w, BranchReport(BRANCH_BALANCED, IDENTITY_TRANSFORM, None, floor, upper))

    a2, b2, t_norm = normalize_orientation(a, b)
    split = TripartiteSplit.of(n, params.alpha_n)
    w2, branch, quantities, floor = dispatch_case(a2, b2, split, params, estimator)
    transform = t_norm.with_reverse() if branch.startswith("case2_") else t_norm
    w = pull_back_witness(w2, t_norm, (n, n))
    if branch in ("case1b", "case1c", "case2_1b", "case2_1c") and len(w) != floor:
        raise WitnessError(f"{branch} must return exactly the zero-match size {floor}")
    return _finish(a, b, w, BranchReport(branch, transform, quantities, floor, upper))


def _ensemble_pipeline(
    a: BitStringView,
    b: BitStringView,
    estimator: Estimator,
    params: ReductionParams,
) -> tuple[SubsequenceWitness, BranchReport]:
    """Evaluate every branch whose precondition holds and keep the longest."""
    n = params.n
    upper = count_upper_bound(a, b)
    paper = _paper_pipeline(a, b, estimator, params)
    if paper[1].branch_id == BRANCH_DEGENERATE:
        return paper

    candidates: list[tuple[SubsequenceWitness, BranchReport]] = [paper]

    bm = best_match(a, b)
    candidates.append(
        (bm, BranchReport(BRANCH_UNBALANCED, IDENTITY_TRANSFORM, None, len(bm), upper))
    )
    w = balanced_gate(a, b, params, estimator)
    if w is not None:
        floor = min(_balanced_gate_floor(params), len(w))
        candidates.append((w, BranchReport(BRANCH_BALANCED, IDENTITY_TRANSFORM, None, floor, upper)))

    a2, b2, t_norm = normalize_orientation(a, b)
    k = params.alpha_n
    split = TripartiteSplit.of(n, k)
    t1 = params.half_alpha + params.band(1)
    t2 = params.half_alpha + params.band(2)
    ones_lb, ones_rb = b2.ones(0, k), b2.ones(n - k, n)
    zeros_la, zeros_ra = a2.zeros(0, k), a2.zeros(n - k, n)

    conds = {
        "case1": ones_rb <= t2 and zeros_ra <= t2,
        "case2": ones_lb <= t2 and zeros_la <= t2,
        "case3": ones_rb <= t1 and ones_lb <= t1 and zeros_la > t2 and zeros_ra > t2,
        "case4": ones_rb > t2 and ones_lb > t2 and zeros_la <= t1 and zeros_ra <= t1,
        "case5": ones_rb > t1 and zeros_la > t1,
        "case6": ones_lb > t1 and zeros_ra > t1,
    }

    def add(w2, branch, quantities, floor):
        transform = t_norm.with_reverse() if branch.startswith("case2_") else t_norm
        wloc = pull_back_witness(w2, t_norm, (n, n))
        candidates.append((wloc, BranchReport(branch, transform, quantities, floor, upper)))

    if conds["case1"]:
        add(*_case1_handler(a2, b2, params, estimator))
    if conds["case2"]:
        w_rev, branch, q, floor = _case1_handler(a2.reverse(), b2.reverse(), params, estimator)
        w2 = pull_back_witness(w_rev, SymmetryTransform(reverse=True), (n, n))
        add(w2, branch.replace("case1", "case2_1", 1), q, floor)
    for case_name in ("case3", "case4", "case5", "case6"):
        if conds[case_name]:
            forced = _forced_case(a2, b2, split, params, case_name)
            add(*forced)

    best = max(enumerate(candidates), key=lambda iw: (len(iw[1][0]), -iw[0]))[1]
    return _finish(a, b, best[0], best[1])


def _forced_case(a, b, split, params, case_name):
    """Build one specific composition of cases 3..6 (precondition already checked)."""
    n, k = len(a), params.alpha_n
    (l_lo, l_hi), (m_lo, m_hi), (r_lo, r_hi) = split.left, split.middle, split.right
    floor = max(0, k + 2 * math.floor(params.beta_n) - 2)
    if case_name == "case3":
        w = concat_witnesses(
            match(a.substring(l_lo, l_hi), b.substring(l_lo, l_hi), 0),
            match(a.substring(m_lo, m_hi), b.substring(m_lo, m_hi), 1).shifted(m_lo, m_lo),
            match(a.substring(r_lo, r_hi), b.substring(r_lo, r_hi), 0).shifted(r_lo, r_lo),
        )
    elif case_name == "case4":
        w = concat_witnesses(
            match(a.substring(l_lo, l_hi), b.substring(l_lo, l_hi), 1),
            match(a.substring(m_lo, m_hi), b.substring(m_lo, m_hi), 0).shifted(m_lo, m_lo),
            match(a.substring(r_lo, r_hi), b.substring(r_lo, r_hi), 1).shifted(r_lo, r_lo),
        )
    elif case_name == "case5":
        w = concat_witnesses(
            match(a.substring(l_lo, l_hi), b.substring(0, r_lo), 0),
            match(a.substring(m_lo, n), b.substring(r_lo, n), 1).shifted(m_lo, r_lo),
        )
    else:
        w = concat_witnesses(
            match(a.substring(0, r_lo), b.substring(l_lo, l_hi), 1),
            match(a.substring(r_lo, n), b.substring(l_hi, n), 0).shifted(r_lo, l_hi),
        )
    return w, case_name, None, floor


def approx_lcs(
    a: BitStringView,
    b: BitStringView,
    estimator: Estimator,
    mode: str = "paper",
    params: ReductionParams | None = None,
) -> tuple[SubsequenceWitness, BranchReport]:
    """Certified common subsequence of length at least (1/2 + epsilon) * LCS.

    Requires equal lengths. paper mode follows the one designated branch;
    ensemble mode additionally evaluates every branch whose precondition holds
    plus the trivial single-symbol match and returns the longest witness. The
    optional params override exists for dispatch-level studies; by default
    everything is derived from the input counts and the estimator factor.
    """
    n = len(a)
    if len(b) != n:
        raise ParameterError(f"equal lengths required, got {len(a)} and {len(b)}")
    if mode not in ("paper", "ensemble"):
        raise ParameterError(f"unknown mode {mode!r}")
    if n == 0:
        report = BranchReport(BRANCH_DEGENERATE, IDENTITY_TRANSFORM, None, 0, 0)
        return SubsequenceWitness.empty(), report
    counts = (a.ones(), a.zeros(), b.ones(), b.zeros())
    if params is None:
        params = derive_params(n, counts, estimator.factor)
    elif params.n != n:
        raise ParameterError(f"params were derived for n={params.n}, input has n={n}")
    if mode == "paper":
        return _paper_pipeline(a, b, estimator, params)
    return _ensemble_pipeline(a, b, estimator, params)
