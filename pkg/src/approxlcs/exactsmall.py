"""Engine-side exact common subsequence for small-minority and fallback paths.

Word-parallel row DP over the first string with full row retention, then a
direct traceback. Kept separate from the test oracles; the engine never
imports oracle code.
"""

from __future__ import annotations

import numpy as np

from .bitstrings import BitStringView, SubsequenceWitness


def _symbol_masks(bits: np.ndarray) -> tuple[int, int]:
    n = len(bits)
    if n == 0:
        return 0, 0
    ones = int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
    return (ones ^ ((1 << n) - 1)), ones


def exact_common_subsequence(a: BitStringView, b: BitStringView) -> SubsequenceWitness:
    """An optimal common subsequence witness of a and b.

    Memory is len(a) row masks of len(b) bits; callers keep this off the hot
    path for very large inputs.
    """
    na, nb = len(a), len(b)
    if na == 0 or nb == 0:
        return SubsequenceWitness.empty()
    masks = _symbol_masks(b.bits)
    abits = a.bits.tolist()

    rows = [0] * (na + 1)
    row = 0
    for i, c in enumerate(abits):
        x = masks[c] | row
        row = x & ~(x - ((row << 1) | 1))
        rows[i + 1] = row

    pairs_a: list[int] = []
    pairs_b: list[int] = []
    i, j = na, nb
    low = (1 << j) - 1
    remaining = row.bit_count()
    while remaining > 0:
        if i > 0 and (rows[i - 1] & low).bit_count() == remaining:
            i -= 1
            continue
        if not (rows[i] >> (j - 1)) & 1:
            j -= 1
            low >>= 1
            continue
        pairs_a.append(i - 1)
        pairs_b.append(j - 1)
        i -= 1
        j -= 1
        low >>= 1
        remaining -= 1
    pairs_a.reverse()
    pairs_b.reverse()
    return SubsequenceWitness(np.array(pairs_a, dtype=np.int64), np.array(pairs_b, dtype=np.int64))


def exact_lcs_value(a: BitStringView, b: BitStringView) -> int:
    """Length-only variant; single forward sweep, no row retention."""
    na, nb = len(a), len(b)
    if na == 0 or nb == 0:
        return 0
    masks = _symbol_masks(b.bits)
    row = 0
    for c in a.bits.tolist():
        x = masks[c] | row
        row = x & ~(x - ((row << 1) | 1))
    return row.bit_count()
