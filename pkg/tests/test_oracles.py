import pytest
from hypothesis import given
from hypothesis import strategies as st

from approxlcs.bitstrings import BitStringView, verify_witness
from approxlcs.errors import OracleInfeasibleError
from approxlcs.oracles import (
    check_oracle_feasible,
    fact1_upper,
    lcs_bruteforce,
    lcs_dp,
    lcs_length,
)

from conftest import all_pairs, textbook_lcs

bits = st.lists(st.integers(0, 1), max_size=150)


def T(s):
    return BitStringView.from_text(s)


def test_lcs_dp_examples():
    assert lcs_dp(T("0101"), T("0011")).lcs_length == 3
    x = T("0100101")
    assert lcs_dp(x, x).lcs_length == len(x)
    assert lcs_dp(T("0000"), T("1111")).lcs_length == 0


def test_bruteforce_examples():
    assert lcs_bruteforce(T("01"), T("10")) == 1
    assert lcs_bruteforce(T("0101"), T("0011")) == 3
    assert lcs_bruteforce(T(""), T("0110")) == 0
    with pytest.raises(OracleInfeasibleError):
        lcs_bruteforce(T("0" * 17), T("1"))


def test_dp_equals_bruteforce_exhaustive():
    for a, b in all_pairs(8, min_len=7):
        assert lcs_length(a, b) == lcs_bruteforce(a, b)
    for a, b in all_pairs(4):
        r = lcs_dp(a, b)
        assert r.lcs_length == lcs_bruteforce(a, b)
        assert len(r.witness) == r.lcs_length and verify_witness(a, b, r.witness)


@given(bits, bits)
def test_dp_matches_textbook_and_fact1(ab, bb):
    a, b = BitStringView.from_bits(ab), BitStringView.from_bits(bb)
    r = lcs_dp(a, b)
    assert r.lcs_length == textbook_lcs(a, b)
    assert verify_witness(a, b, r.witness)
    assert r.lcs_length <= r.fact1_upper == fact1_upper(a, b)


def test_fact1_examples():
    assert fact1_upper(T("0101"), T("0011")) == 4
    assert fact1_upper(T("0000"), T("1111")) == 0


@given(bits, bits)
def test_lcs_symmetries(ab, bb):
    a, b = BitStringView.from_bits(ab), BitStringView.from_bits(bb)
    base = lcs_length(a, b)
    assert base == lcs_length(b, a)
    assert base == lcs_length(a.reverse(), b.reverse())
    assert base == lcs_length(a.complement(), b.complement())


def test_feasibility_cutoff():
    check_oracle_feasible(20_000)
    with pytest.raises(OracleInfeasibleError):
        check_oracle_feasible(20_001)
