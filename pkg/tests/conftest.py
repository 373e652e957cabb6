import numpy as np
import pytest

from approxlcs.bitstrings import BitStringView


def textbook_lcs(a: BitStringView, b: BitStringView) -> int:
    """Plain quadratic DP, kept independent of every package implementation."""
    xs, ys = a.bits.tolist(), b.bits.tolist()
    prev = [0] * (len(ys) + 1)
    for x in xs:
        cur = [0]
        for j, y in enumerate(ys):
            cur.append(max(prev[j + 1], cur[j], prev[j] + (x == y)))
        prev = cur
    return prev[-1]


def naive_witness_check(a: BitStringView, b: BitStringView, w) -> bool:
    """Re-scan witness checker used as a referee for verify_witness."""
    ai = list(map(int, w.a_indices))
    bi = list(map(int, w.b_indices))
    if len(ai) != len(bi):
        return False
    last_a = last_b = -1
    for i, j in zip(ai, bi):
        if not (0 <= i < len(a) and 0 <= j < len(b)):
            return False
        if i <= last_a or j <= last_b:
            return False
        if a[i] != b[j]:
            return False
        last_a, last_b = i, j
    return True


def bits_from_code(code: int, length: int) -> BitStringView:
    return BitStringView.from_bits([(code >> i) & 1 for i in range(length)])


def all_pairs(max_len: int, min_len: int = 1):
    for n in range(min_len, max_len + 1):
        for ac in range(1 << n):
            a = bits_from_code(ac, n)
            for bc in range(1 << n):
                yield a, bits_from_code(bc, n)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
