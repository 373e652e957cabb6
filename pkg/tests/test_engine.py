import math
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from approxlcs.bitstrings import BitStringView, verify_witness
from approxlcs.editdistance import AdversarialEstimator, ExactEstimator
from approxlcs.engine import (
    CASE_BRANCHES,
    TripartiteSplit,
    approx_lcs,
    balanced_gate,
    dispatch_case,
    normalize_orientation,
    unbalanced_gate,
)
from approxlcs.errors import ParameterError
from approxlcs.generators import InstanceSpec, generate
from approxlcs.oracles import lcs_length
from approxlcs.params import derive_params, machine_params

from conftest import textbook_lcs

EXACT = ExactEstimator()


def T(s):
    return BitStringView.from_text(s)


def mp(a, b, c=1):
    counts = (a.ones(), a.zeros(), b.ones(), b.zeros())
    return machine_params(derive_params(len(a), counts, c))


def guarantee_floor(lcs, eps):
    return max(0, math.ceil((Fraction(1, 2) + eps) * lcs) - 1)


def test_identical_strings():
    a = T("00110011")
    w, rep = approx_lcs(a, a, EXACT)
    assert len(w) == 8
    w, rep = approx_lcs(a, a, EXACT, params=mp(a, a))
    assert len(w) == 8 and rep.branch_id == "balanced_gate"


def test_alpha_zero_goes_degenerate():
    w, rep = approx_lcs(T("00000000"), T("00001111"), EXACT)
    assert rep.branch_id == "degenerate" and len(w) == 4


def test_spec_pair_meets_guarantee():
    a, b = T("0000000100000001"), T("1111110111111101")
    L = textbook_lcs(a, b)
    for est in (EXACT, AdversarialEstimator(c=3)):
        w, rep = approx_lcs(a, b, est)
        eps = derive_params(16, (a.ones(), a.zeros(), b.ones(), b.zeros()), est.factor).epsilon
        assert len(w) >= guarantee_floor(L, eps)
        assert verify_witness(a, b, w)


def test_rejects_unequal_lengths_and_bad_mode():
    with pytest.raises(ParameterError):
        approx_lcs(T("01"), T("010"), EXACT)
    with pytest.raises(ParameterError):
        approx_lcs(T("01"), T("01"), EXACT, mode="other")


def test_empty_pair():
    w, rep = approx_lcs(T(""), T(""), EXACT)
    assert len(w) == 0 and rep.branch_id == "degenerate"


def test_unbalanced_gate_op():
    # ones(a)=10 vs zeros(b)=40 on n=50: fires and returns the best match
    a = BitStringView.from_bits([1] * 10 + [0] * 40)
    b = BitStringView.from_bits([1] * 10 + [0] * 40)
    params = derive_params(50, (10, 40, 10, 40), 1)
    w = unbalanced_gate(a, b, params)
    assert w is not None and len(w) == 40

    # exact agreement between ones(a) and zeros(b): stays closed
    b2 = BitStringView.from_bits([0] * 10 + [1] * 40)
    params = derive_params(50, (10, 40, 40, 10), 1)
    assert unbalanced_gate(a, b2, params) is None


def test_unbalanced_gate_boundary_strict():
    # |difference| exactly at the threshold: stays closed (strict comparison)
    n = 12800
    ones_a, zeros_b = 3201, 3200  # alpha_n = 3200, delta * alpha_n = 1
    a = BitStringView.from_bits([1] * ones_a + [0] * (n - ones_a))
    b = BitStringView.from_bits([0] * zeros_b + [1] * (n - zeros_b))
    params = derive_params(n, (ones_a, n - ones_a, n - zeros_b, zeros_b), 1)
    assert params.alpha_n == 3200 and params.delta_alpha_n == 1
    assert abs(ones_a - zeros_b) == 1
    assert unbalanced_gate(a, b, params) is None

    # one past the threshold: fires
    a2 = BitStringView.from_bits([1] * (ones_a + 1) + [0] * (n - ones_a - 1))
    params2 = derive_params(n, (ones_a + 1, n - ones_a - 1, n - zeros_b, zeros_b), 1)
    assert unbalanced_gate(a2, b, params2) is not None


def test_balanced_gate_op():
    rng = np.random.default_rng(5)
    n = 64
    bits = rng.integers(0, 2, n)
    bits[: n // 2] = 0
    bits[n // 2 :] = 1
    a = BitStringView.from_bits(rng.permutation(bits))
    b = BitStringView.from_bits(rng.permutation(bits))
    params = mp(a, b)
    w = balanced_gate(a, b, params, EXACT)
    assert w is not None
    assert len(w) == lcs_length(a, b)  # exact estimator certifies the optimum

    skew = BitStringView.from_bits([0] * 48 + [1] * 16)
    params2 = mp(skew, b)
    assert balanced_gate(skew, b, params2, EXACT) is None


def test_balanced_gate_near_copy_pair():
    # both strings are one deletion away from a shared balanced string; the
    # band only contains an integer once n * width crosses one count
    rng = np.random.default_rng(11)
    x = np.concatenate([np.zeros(201, np.uint8), np.ones(201, np.uint8)])
    x = rng.permutation(x)
    a = BitStringView.from_bits(np.delete(x, 3))
    b = BitStringView.from_bits(np.delete(x, 300))
    params = mp(a, b)
    w = balanced_gate(a, b, params, EXACT)
    assert w is not None and len(w) >= len(a) - 1  # LCS of this pair is n-1


def test_normalization_priority():
    a, b = T("1100"), T("1110")  # ones_a=2 zeros_a=2 ones_b=3 zeros_b=1 -> min is zeros_b
    a2, b2, t = normalize_orientation(a, b)
    assert (t.swap_ab, t.complement) == (True, True)
    assert a2.ones() == min(2, 2, 3, 1)
    # ties prefer ones(a) first
    a, b = T("10"), T("01")
    _, _, t = normalize_orientation(a, b)
    assert t.is_identity()


def test_dispatch_case5_walkthrough():
    # region counts (ones_rb, ones_lb, zeros_la, zeros_ra) = (K, 0, K, 0)
    a = T("0" * 16 + "1" * 8)
    b = T("0" * 8 + "1" * 16)
    params = mp(a, b)
    split = TripartiteSplit.of(24, 8)
    w, branch, _, floor = dispatch_case(a, b, split, params, EXACT)
    assert branch == "case5"
    assert len(w) == 16 == textbook_lcs(a, b)
    assert len(w) >= floor


def test_dispatch_case3_construction():
    a, b = generate(InstanceSpec("case_targeted(case3)", 1100, 21))
    params = mp(a, b)
    k = params.alpha_n
    w, rep = approx_lcs(a, b, EXACT, params=params)
    assert rep.branch_id == "case3"
    assert len(w) >= k + 2 * math.floor(params.beta_n) - 2
    assert len(w) >= guarantee_floor(textbook_lcs(a, b), params.epsilon)


def test_case1bc_exact_output():
    for branch in ("case1b", "case1c", "case2_1b", "case2_1c"):
        a, b = generate(InstanceSpec(f"case_targeted({branch})", 900, 3))
        params = mp(a, b)
        w, rep = approx_lcs(a, b, EXACT, params=params)
        assert rep.branch_id == branch
        assert len(w) == min(a.zeros(), b.zeros())  # counts invariant under the reversal family


def test_case1a_quantities():
    a, b = generate(InstanceSpec("case_targeted(case1a_greedy)", 1100, 9))
    params = mp(a, b)
    w, rep = approx_lcs(a, b, EXACT, params=params)
    assert rep.branch_id == "case1a_greedy"
    q = rep.quantities
    assert q is not None
    assert 2 * q.z >= q.x
    assert 0 <= q.split.split_point <= len(b)


def test_every_branch_reachable_and_valid():
    for branch in CASE_BRANCHES:
        a, b = generate(InstanceSpec(f"case_targeted({branch})", 1024, 14))
        params = mp(a, b)
        w, rep = approx_lcs(a, b, EXACT, params=params)
        assert rep.branch_id == branch
        assert verify_witness(a, b, w)
        assert rep.guaranteed_lower_bound <= len(w) <= rep.upper_bound
        assert len(w) >= guarantee_floor(lcs_length(a, b), params.epsilon)


@settings(max_examples=250, deadline=None)
@given(st.data())
def test_machine_guarantee_random(data):
    n = data.draw(st.integers(2, 90))
    abits = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    bbits = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    c = data.draw(st.sampled_from([1, 2, 3]))
    est = ExactEstimator() if c == 1 else AdversarialEstimator(c=c)
    a, b = BitStringView.from_bits(abits), BitStringView.from_bits(bbits)
    params = mp(a, b, c)
    w, rep = approx_lcs(a, b, est, params=params)
    assert verify_witness(a, b, w)
    L = textbook_lcs(a, b)
    assert len(w) >= guarantee_floor(L, params.epsilon)
    assert len(w) <= L


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_ensemble_not_worse_than_paper(data):
    n = data.draw(st.integers(2, 70))
    abits = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    bbits = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    a, b = BitStringView.from_bits(abits), BitStringView.from_bits(bbits)
    params = mp(a, b)
    w_paper, _ = approx_lcs(a, b, EXACT, params=params)
    w_ens, rep = approx_lcs(a, b, EXACT, mode="ensemble", params=params)
    assert len(w_ens) >= len(w_paper)
    assert verify_witness(a, b, w_ens)
    # ensemble dominates the trivial single-symbol match by construction
    triv = max(min(a.zeros(), b.zeros()), min(a.ones(), b.ones()))
    assert len(w_ens) >= triv


def test_determinism():
    a, b = generate(InstanceSpec("uniform(0.5,0.5)", 300, 8))
    runs = [approx_lcs(a, b, EXACT, params=mp(a, b)) for _ in range(3)]
    first_w, first_rep = runs[0]
    for w, rep in runs[1:]:
        assert w.a_indices.tolist() == first_w.a_indices.tolist()
        assert w.b_indices.tolist() == first_w.b_indices.tolist()
        assert rep == first_rep


def test_engine_import_does_not_load_oracles():
    code = (
        "import sys; import approxlcs.engine; "
        "sys.exit(1 if 'approxlcs.oracles' in sys.modules else 0)"
    )
    proc = subprocess.run([sys.executable, "-c", code])
    assert proc.returncode == 0
