"""Binary string views, symmetry transforms, and certified subsequence witnesses.

Counts are absolute integers throughout; any normalization happens at the
comparison site via exact rational arithmetic, never floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ParseError, RangeError

_WORD_BITS = 64
# Low-bit masks for partial-word popcounts, index r keeps bits [0, r).
_LOW_MASKS = np.array([(1 << r) - 1 for r in range(_WORD_BITS)], dtype=np.uint64)


class BitStringView:
    """Immutable view of a 0/1 string with O(1) symbol-count range queries.

    The bits are kept both as a uint8 array (element access, slicing,
    occurrence extraction) and packed into 64-bit words with a per-word
    checkpoint table of cumulative ones, so any prefix count is one table
    lookup plus one popcount. Internal caches are filled lazily; the view is
    logically immutable and safe to share across threads.
    """

    __slots__ = ("bits", "_words", "_checkpoints", "_prefix", "_positions")

    def __init__(self, bits: np.ndarray):
        bits = np.ascontiguousarray(bits, dtype=np.uint8)
        if bits.ndim != 1:
            raise ValueError("bits must be one-dimensional")
        self.bits = bits
        self.bits.setflags(write=False)
        self._words: np.ndarray | None = None
        self._checkpoints: np.ndarray | None = None
        self._prefix: np.ndarray | None = None
        self._positions: dict[int, np.ndarray] = {}

    # -- construction -----------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> "BitStringView":
        """Parse a line of '0'/'1' characters (one optional trailing newline)."""
        if text.endswith("\n"):
            text = text[:-1]
        raw = text.encode("ascii", errors="replace")
        arr = np.frombuffer(raw, dtype=np.uint8)
        bad = (arr != ord("0")) & (arr != ord("1"))
        if bad.any():
            pos = int(np.flatnonzero(bad)[0])
            raise ParseError(f"byte {text[pos]!r} at position {pos} is not '0' or '1'")
        return cls(arr - ord("0"))

    @classmethod
    def from_bits(cls, bits) -> "BitStringView":
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.size and arr.max() > 1:
            raise ParseError("bit values must be 0 or 1")
        return cls(arr)

    def to_text(self) -> str:
        return (self.bits + ord("0")).tobytes().decode("ascii")

    # -- counting ---------------------------------------------------------

    def _build_rank(self) -> None:
        n = len(self.bits)
        packed = np.packbits(self.bits, bitorder="little")
        pad = (-len(packed)) % 8
        if pad:
            packed = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
        words = packed.view(np.uint64)
        checkpoints = np.zeros(len(words) + 1, dtype=np.int64)
        np.cumsum(np.bitwise_count(words), out=checkpoints[1:])
        self._words = words
        self._checkpoints = checkpoints
        if n == 0:
            self._words = np.zeros(1, dtype=np.uint64)
            self._checkpoints = np.zeros(2, dtype=np.int64)

    def rank_ones(self, p: int) -> int:
        """Number of 1 symbols among the first p symbols."""
        if self._words is None:
            self._build_rank()
        w, r = divmod(p, _WORD_BITS)
        total = int(self._checkpoints[w])
        if r:
            total += int(self._words[w] & _LOW_MASKS[r]).bit_count()
        return total

    def count(self, lo: int, hi: int, symbol: int) -> int:
        """Occurrences of symbol in the half-open range [lo, hi)."""
        if not (0 <= lo <= hi <= len(self.bits)):
            raise RangeError(f"range [{lo}, {hi}) outside string of length {len(self.bits)}")
        ones = self.rank_ones(hi) - self.rank_ones(lo)
        return ones if symbol == 1 else (hi - lo) - ones

    def ones(self, lo: int | None = None, hi: int | None = None) -> int:
        lo = 0 if lo is None else lo
        hi = len(self.bits) if hi is None else hi
        return self.count(lo, hi, 1)

    def zeros(self, lo: int | None = None, hi: int | None = None) -> int:
        lo = 0 if lo is None else lo
        hi = len(self.bits) if hi is None else hi
        return self.count(lo, hi, 0)

    def prefix_ones_array(self) -> np.ndarray:
        """Cached cumulative ones table, entry p = ones in [0, p). Length n+1."""
        if self._prefix is None:
            out = np.zeros(len(self.bits) + 1, dtype=np.int64)
            np.cumsum(self.bits, out=out[1:])
            out.setflags(write=False)
            self._prefix = out
        return self._prefix

    def positions(self, symbol: int) -> np.ndarray:
        """Sorted positions of symbol, cached."""
        got = self._positions.get(symbol)
        if got is None:
            got = np.flatnonzero(self.bits == symbol).astype(np.int64)
            got.setflags(write=False)
            self._positions[symbol] = got
        return got

    # -- derived views ----------------------------------------------------

    def substring(self, lo: int, hi: int) -> "BitStringView":
        if not (0 <= lo <= hi <= len(self.bits)):
            raise RangeError(f"range [{lo}, {hi}) outside string of length {len(self.bits)}")
        return BitStringView(self.bits[lo:hi])

    def reverse(self) -> "BitStringView":
        return BitStringView(self.bits[::-1])

    def complement(self) -> "BitStringView":
        return BitStringView(1 - self.bits)

    # -- dunder -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        return int(self.bits[i])

    def __eq__(self, other) -> bool:
        return isinstance(other, BitStringView) and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash(self.bits.tobytes())

    def __repr__(self) -> str:
        s = self.to_text()
        if len(s) > 40:
            s = s[:37] + "..."
        return f"BitStringView({s!r}, n={len(self)})"


@dataclass(frozen=True)
class SubsequenceWitness:
    """A certified common subsequence: paired strictly increasing index lists."""

    a_indices: np.ndarray
    b_indices: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a_indices", np.asarray(self.a_indices, dtype=np.int64))
        object.__setattr__(self, "b_indices", np.asarray(self.b_indices, dtype=np.int64))

    @classmethod
    def empty(cls) -> "SubsequenceWitness":
        return cls(np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))

    def __len__(self) -> int:
        return len(self.a_indices)

    def shifted(self, a_offset: int, b_offset: int) -> "SubsequenceWitness":
        return SubsequenceWitness(self.a_indices + a_offset, self.b_indices + b_offset)

    def truncated(self, k: int) -> "SubsequenceWitness":
        k = max(0, min(k, len(self)))
        return SubsequenceWitness(self.a_indices[:k], self.b_indices[:k])

    def to_json(self) -> dict:
        return {"a": self.a_indices.tolist(), "b": self.b_indices.tolist()}


def concat_witnesses(*parts: SubsequenceWitness) -> SubsequenceWitness:
    """Concatenate witnesses whose index blocks are already disjoint and ordered."""
    keep = [p for p in parts if len(p)]
    if not keep:
        return SubsequenceWitness.empty()
    return SubsequenceWitness(
        np.concatenate([p.a_indices for p in keep]),
        np.concatenate([p.b_indices for p in keep]),
    )


def verify_witness(a: BitStringView, b: BitStringView, w: SubsequenceWitness) -> bool:
    """True iff w certifies a common subsequence of a and b."""
    ai, bi = w.a_indices, w.b_indices
    if len(ai) != len(bi):
        return False
    if len(ai) == 0:
        return True
    if len(ai) > min(len(a), len(b)):
        return False
    if len(ai) <= 32:
        abits, bbits = a.bits, b.bits
        la, lb = len(abits), len(bbits)
        pa = pb = -1
        for i, j in zip(ai.tolist(), bi.tolist()):
            if i <= pa or j <= pb or i >= la or j >= lb or abits[i] != bbits[j]:
                return False
            pa, pb = i, j
        return pa >= 0
    if ai[0] < 0 or bi[0] < 0 or ai[-1] >= len(a) or bi[-1] >= len(b):
        return False
    if not ((np.diff(ai) > 0).all() and (np.diff(bi) > 0).all()):
        return False
    return bool((a.bits[ai] == b.bits[bi]).all())


@dataclass(frozen=True)
class SymmetryTransform:
    """Composable string-pair symmetry. Fixed application order: swap, complement, reverse.

    Each component is a bijection on matchings, so LCS length is invariant.
    """

    swap_ab: bool = False
    complement: bool = False
    reverse: bool = False

    def is_identity(self) -> bool:
        return not (self.swap_ab or self.complement or self.reverse)

    def with_reverse(self) -> "SymmetryTransform":
        # Valid only when reverse is not already set (it is applied last).
        return replace(self, reverse=True)

    def to_json(self) -> dict:
        return {"swap_ab": self.swap_ab, "complement": self.complement, "reverse": self.reverse}


IDENTITY_TRANSFORM = SymmetryTransform()


def apply_transform(
    pair: tuple[BitStringView, BitStringView], t: SymmetryTransform
) -> tuple[BitStringView, BitStringView]:
    a, b = pair
    if t.swap_ab:
        a, b = b, a
    if t.complement:
        a, b = a.complement(), b.complement()
    if t.reverse:
        a, b = a.reverse(), b.reverse()
    return a, b


def pull_back_witness(
    w: SubsequenceWitness, t: SymmetryTransform, lengths: tuple[int, int]
) -> SubsequenceWitness:
    """Map a witness for the transformed pair back to the original pair.

    lengths are the original pair lengths; reverse maps index i to len-1-i and
    restores sortedness by reversing both sequences in lockstep, complement
    leaves indices alone, swap exchanges the two sequences.
    """
    la, lb = lengths
    ai, bi = w.a_indices, w.b_indices
    if t.reverse:
        # Transformed-string lengths equal the originals modulo the swap.
        ta, tb = (lb, la) if t.swap_ab else (la, lb)
        ai = (ta - 1 - ai)[::-1]
        bi = (tb - 1 - bi)[::-1]
    if t.swap_ab:
        ai, bi = bi, ai
    return SubsequenceWitness(ai, bi)
