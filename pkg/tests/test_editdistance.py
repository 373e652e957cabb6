from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from approxlcs.bitstrings import BitStringView, verify_witness
from approxlcs.editdistance import (
    AdversarialEstimator,
    EditEstimate,
    ExactEstimator,
    TRACE_CAP,
    approx_ed_value,
    ed_lcs_identity_check,
    exact_edit_distance,
    indel_distance,
    parse_estimator,
)
from approxlcs.errors import EstimatorError, ParameterError
from approxlcs.exactsmall import exact_common_subsequence, exact_lcs_value
from approxlcs.oracles import lcs_length

from conftest import all_pairs, textbook_lcs

bits = st.lists(st.integers(0, 1), max_size=120)


def T(s):
    return BitStringView.from_text(s)


def test_exact_examples():
    assert exact_edit_distance(T("0101"), T("0101")) [0] == 0
    d, w = exact_edit_distance(T("01"), T("10"))
    assert d == 2 and len(w) == 1
    d, w = exact_edit_distance(T(""), T("0101"))
    assert d == 4 and len(w) == 0


def test_identity_exhaustive_small():
    for a, b in all_pairs(6):
        d, w = exact_edit_distance(a, b)
        L = textbook_lcs(a, b)
        assert d == len(a) + len(b) - 2 * L
        assert len(w) == L and verify_witness(a, b, w)


@given(bits, bits)
def test_identity_and_witness_random(ab, bb):
    a, b = BitStringView.from_bits(ab), BitStringView.from_bits(bb)
    d, w = exact_edit_distance(a, b)
    assert d == len(a) + len(b) - 2 * textbook_lcs(a, b)
    assert 2 * len(w) == len(a) + len(b) - d
    assert verify_witness(a, b, w)
    assert indel_distance(a, b) == d


def test_identity_check_helper():
    assert ed_lcs_identity_check(T("01"), T("10"))
    x = T("0100110")
    assert ed_lcs_identity_check(x, x)
    assert ed_lcs_identity_check(T("01"), T("10"), lcs_len=1)


def test_trace_cap_fallback():
    # distance far above the cap still yields a valid witness via the fallback
    n = 2 * TRACE_CAP + 512
    a = BitStringView.from_bits([0] * n)
    b = BitStringView.from_bits([1] * (n // 2) + [0] * (n - n // 2))
    d, w = exact_edit_distance(a, b)
    assert d == 2 * (n - len(w))
    assert verify_witness(a, b, w)
    assert len(w) == lcs_length(a, b)


def test_exactsmall_agrees_with_oracle(rng):
    for a, b in all_pairs(6):
        w = exact_common_subsequence(a, b)
        assert len(w) == textbook_lcs(a, b)
        assert verify_witness(a, b, w)
    for _ in range(25):
        n = int(rng.integers(0, 400))
        a = BitStringView.from_bits(rng.integers(0, 2, n))
        b = BitStringView.from_bits(rng.integers(0, 2, n))
        w = exact_common_subsequence(a, b)
        assert len(w) == exact_lcs_value(a, b) == lcs_length(a, b)
        assert verify_witness(a, b, w)


def test_exact_estimator_contract():
    est = ExactEstimator()
    out = approx_ed_value(T("01"), T("10"), est)
    assert out.certified_length == 1
    out = approx_ed_value(T("0101"), T("0101"), est)
    assert out.claimed_distance == 0 and out.certified_length == 4
    with pytest.raises(ParameterError):
        approx_ed_value(T("01"), T("010"), est)


def test_adversarial_examples():
    # true distance 2 in deletion units on an n=8 pair
    a, b = T("00000000"), T("00000011")
    assert ExactEstimator().estimate(a, b).claimed_distance == 2
    est3 = AdversarialEstimator(c=3)
    out = est3.estimate(a, b)
    assert out.claimed_distance == 6
    assert out.certified_length == 2 and len(out.witness) == 2

    # c=1 slack 0 reduces to the inner estimator
    est1 = AdversarialEstimator(c=1)
    for pair in (("0101", "0110"), ("0000", "1111")):
        x, y = T(pair[0]), T(pair[1])
        assert est1.estimate(x, y).claimed_distance == ExactEstimator().estimate(x, y).claimed_distance

    # c=2 slack 0 with true distance 3 at n=10
    x, y = T("0000000000"), T("0000000111")
    out = AdversarialEstimator(c=2).estimate(x, y)
    assert out.claimed_distance == 6

    # slack exponent 1/2 on identical strings claims floor(sqrt(n))
    ident = T("0110100101010011")
    out = AdversarialEstimator(c=3, slack_exponent=Fraction(1, 2)).estimate(ident, ident)
    assert out.claimed_distance == 4


def test_adversarial_requires_c_at_least_one():
    with pytest.raises(ParameterError):
        AdversarialEstimator(c=Fraction(1, 2))
    with pytest.raises(ParameterError):
        AdversarialEstimator(c=2, slack_exponent=Fraction(3, 2))


@settings(max_examples=150)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=60), st.data())
def test_adversarial_sandwich(ab, data):
    n = len(ab)
    bb = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    c = data.draw(st.sampled_from([1, 2, 3, 5, Fraction(5, 2)]))
    e = data.draw(st.sampled_from([None, Fraction(1, 2), Fraction(3, 4)]))
    calls = []
    est = AdversarialEstimator(c=c, slack_exponent=e, sink=lambda *t: calls.append(t))
    a, b = BitStringView.from_bits(ab), BitStringView.from_bits(bb)
    out = approx_ed_value(a, b, est)
    true_d = (2 * n - 2 * textbook_lcs(a, b)) // 2
    assert calls == [(n, true_d, out.claimed_distance)]
    assert true_d <= out.claimed_distance <= min(Fraction(c) * true_d + est.slack(n), n)
    assert len(out.witness) >= out.certified_length
    assert verify_witness(a, b, out.witness)


def test_estimate_validation():
    with pytest.raises(EstimatorError):
        EditEstimate(4, 5, None, "x")
    with pytest.raises(EstimatorError):
        EditEstimate(4, -1, None, "x")


def test_parse_estimator():
    assert parse_estimator("exact").estimator_id == "exact"
    est = parse_estimator("adversarial:3")
    assert est.factor == 3 and est.slack(100) == 0
    est = parse_estimator("adversarial:5/2:0.5")
    assert est.factor == Fraction(5, 2) and est.slack(100) == 10
    for bad in ("", "exact:1", "adversarial", "adversarial:x", "magic"):
        with pytest.raises(ParameterError):
            parse_estimator(bad)
