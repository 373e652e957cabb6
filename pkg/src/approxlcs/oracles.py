"""Independent ground-truth engines for tests and the auditor.

Nothing in the approximation engine imports this module; the test suite
asserts that layering so oracle code cannot leak into the O(n) path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitstrings import BitStringView, SubsequenceWitness, verify_witness
from .errors import OracleInfeasibleError, WitnessError

BRUTE_FORCE_CAP = 16

# Largest n the quadratic-class oracle is considered feasible for in audits.
ORACLE_FEASIBLE_N = 20_000


@dataclass(frozen=True)
class OracleResult:
    lcs_length: int
    witness: SubsequenceWitness
    fact1_upper: int


def fact1_upper(a: BitStringView, b: BitStringView) -> int:
    """Counting ceiling on LCS: min zeros across inputs plus min ones."""
    return min(a.zeros(), b.zeros()) + min(a.ones(), b.ones())


def _bit_masks(bits: np.ndarray) -> tuple[int, int, int]:
    """Pack a uint8 0/1 array into (ones_mask, zeros_mask, full_mask) ints."""
    n = len(bits)
    if n == 0:
        return 0, 0, 0
    ones = int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
    full = (1 << n) - 1
    return ones, ones ^ full, full


def _row_sweep(abits: np.ndarray, bbits: np.ndarray) -> int:
    """Run the word-parallel LCS row recurrence over all of b; return final row mask.

    Bit i of the result marks a column where the DP row steps up, so any
    prefix popcount recovers LCS(a[:i], b).
    """
    ones_mask, zeros_mask, _ = _bit_masks(abits)
    masks = (zeros_mask, ones_mask)
    row = 0
    for c in bbits:
        x = masks[c] | row
        row = x & ~(x - ((row << 1) | 1))
    return row


def _prefix_popcounts(mask: int, n: int) -> np.ndarray:
    """Vector of popcount(mask & low(i)) for i in 0..n."""
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8) if nbytes else np.zeros(0, np.uint8)
    bits = np.unpackbits(raw, bitorder="little")[:n]
    out = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(bits, out=out[1:])
    return out


def lcs_length(a: BitStringView, b: BitStringView) -> int:
    """Exact LCS length by the word-parallel row DP."""
    if len(a) == 0 or len(b) == 0:
        return 0
    return int(_row_sweep(a.bits, b.bits)).bit_count()


def _hirschberg_pairs(abits: np.ndarray, bbits: np.ndarray, aoff: int, boff: int, out: list) -> None:
    """Recursive linear-space traceback, splitting b at its midpoint."""
    na, nb = len(abits), len(bbits)
    if na == 0 or nb == 0:
        return
    if nb == 1:
        hit = np.flatnonzero(abits == bbits[0])
        if len(hit):
            out.append((aoff + int(hit[0]), boff))
        return
    mid = nb // 2
    fwd = _prefix_popcounts(_row_sweep(abits, bbits[:mid]), na)
    bwd = _prefix_popcounts(_row_sweep(abits[::-1], bbits[mid:][::-1]), na)
    split = int(np.argmax(fwd + bwd[::-1]))
    _hirschberg_pairs(abits[:split], bbits[:mid], aoff, boff, out)
    _hirschberg_pairs(abits[split:], bbits[mid:], aoff + split, boff + mid, out)


def lcs_dp(a: BitStringView, b: BitStringView) -> OracleResult:
    """Exact LCS with a certified witness, divide-and-conquer traceback."""
    pairs: list[tuple[int, int]] = []
    _hirschberg_pairs(a.bits, b.bits, 0, 0, pairs)
    if pairs:
        ai, bi = zip(*pairs)
        witness = SubsequenceWitness(np.array(ai, dtype=np.int64), np.array(bi, dtype=np.int64))
    else:
        witness = SubsequenceWitness.empty()
    length = lcs_length(a, b)
    upper = fact1_upper(a, b)
    if len(witness) != length or not verify_witness(a, b, witness) or length > upper:
        raise WitnessError("oracle self-check failed")  # pragma: no cover
    return OracleResult(length, witness, upper)


def lcs_bruteforce(a: BitStringView, b: BitStringView) -> int:
    """Max over all subsequences of a of the longest prefix embeddable in b."""
    if len(a) > BRUTE_FORCE_CAP:
        raise OracleInfeasibleError(f"brute force capped at |a| <= {BRUTE_FORCE_CAP}")
    abits = a.bits.tolist()
    bbits = b.bits.tolist()
    nb = len(bbits)
    best = 0
    for mask in range(1 << len(abits)):
        j = 0
        matched = 0
        for i, bit in enumerate(abits):
            if (mask >> i) & 1:
                while j < nb and bbits[j] != bit:
                    j += 1
                if j >= nb:
                    break
                matched += 1
                j += 1
        if matched > best:
            best = matched
    return best


def check_oracle_feasible(n: int) -> None:
    if n > ORACLE_FEASIBLE_N:
        raise OracleInfeasibleError(
            f"exact oracle refused for n={n} (feasibility cutoff {ORACLE_FEASIBLE_N})"
        )
