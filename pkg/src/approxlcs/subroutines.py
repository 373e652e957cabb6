"""Linear-time building blocks: single-symbol matching and the two-piece greedy split."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitstrings import BitStringView, SubsequenceWitness, concat_witnesses


@dataclass(frozen=True)
class GreedySplit:
    """Outcome of the best contiguous split of b against (a1, a2).

    left_value / right_value are the per-side single-symbol match sizes at the
    chosen split point; left_symbol / right_symbol say which symbol realized
    each side, so callers can derive follow-up quantities without rescanning.
    """

    split_point: int
    left_value: int
    right_value: int
    left_symbol: int
    right_symbol: int

    @property
    def total(self) -> int:
        return self.left_value + self.right_value


def match(a: BitStringView, b: BitStringView, symbol: int) -> SubsequenceWitness:
    """Witness of min(symbol-count in a, symbol-count in b) copies of symbol.

    Uses the first occurrences on each side, which keeps sub-witnesses inside
    the regions they came from when the caller later concatenates them.
    """
    pa = a.positions(symbol)
    pb = b.positions(symbol)
    k = min(len(pa), len(pb))
    if k == 0:
        return SubsequenceWitness.empty()
    return SubsequenceWitness(pa[:k], pb[:k])


def _match_value(a: BitStringView, b: BitStringView, symbol: int) -> int:
    return min(a.count(0, len(a), symbol), b.count(0, len(b), symbol))


def best_match(a: BitStringView, b: BitStringView) -> SubsequenceWitness:
    """The longer of the all-zeros and all-ones matches; ties go to symbol 0."""
    v0 = _match_value(a, b, 0)
    v1 = _match_value(a, b, 1)
    return match(a, b, 0) if v0 >= v1 else match(a, b, 1)


def best_match_value(a: BitStringView, b: BitStringView) -> int:
    return max(_match_value(a, b, 0), _match_value(a, b, 1))


def greedy(
    a1: BitStringView, a2: BitStringView, b: BitStringView
) -> tuple[SubsequenceWitness, GreedySplit]:
    """Best contiguous split of b maximizing the two per-side best matches.

    Sweeps all len(b)+1 split points with prefix counts; ties go to the
    smallest split point, and each side's symbol tie goes to 0. The combined
    witness offsets the a2 part by len(a1) and the right part by the split.
    """
    ones1, zeros1 = a1.ones(), a1.zeros()
    ones2, zeros2 = a2.ones(), a2.zeros()
    nb = len(b)
    prefix_ones = b.prefix_ones_array()
    total_ones = int(prefix_ones[-1])

    positions = np.arange(nb + 1, dtype=np.int64)
    left0 = np.minimum(zeros1, positions - prefix_ones)
    left1 = np.minimum(ones1, prefix_ones)
    right0 = np.minimum(zeros2, (nb - positions) - (total_ones - prefix_ones))
    right1 = np.minimum(ones2, total_ones - prefix_ones)
    totals = np.maximum(left0, left1) + np.maximum(right0, right1)

    split = int(np.argmax(totals))
    left_symbol = 0 if left0[split] >= left1[split] else 1
    right_symbol = 0 if right0[split] >= right1[split] else 1
    report = GreedySplit(
        split_point=split,
        left_value=int(max(left0[split], left1[split])),
        right_value=int(max(right0[split], right1[split])),
        left_symbol=left_symbol,
        right_symbol=right_symbol,
    )

    wl = match(a1, b.substring(0, split), left_symbol)
    wr = match(a2, b.substring(split, nb), right_symbol)
    witness = concat_witnesses(wl, wr.shifted(len(a1), split))
    return witness, report
