"""Deterministic instance generation, including branch-targeted construction.

Every pair is a pure function of (generator, n, seed); streams come from the
counter-based philox4x64 generator so runs reproduce across platforms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bitstrings import BitStringView
from .editdistance import ExactEstimator
from .engine import ALL_BRANCHES, BRANCH_DEGENERATE, approx_lcs
from .errors import GenerationError, ParameterError
from .params import derive_params, machine_params

PRNG_ID = "philox4x64"

TARGET_ATTEMPTS = 64

_GEN_RE = re.compile(r"^([a-z_0-9]+)\(([^)]*)\)$")


@dataclass(frozen=True)
class InstanceSpec:
    """One generation request; byte-for-byte reproducible."""

    generator: str
    n: int
    seed: int

    def to_json(self) -> dict:
        return {"generator": self.generator, "n": self.n, "seed": self.seed}

    @classmethod
    def from_json(cls, obj: dict) -> "InstanceSpec":
        return cls(str(obj["generator"]), int(obj["n"]), int(obj["seed"]))


def _rng(seed: int, lane: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), lane]))


def parse_generator(text: str) -> tuple[str, tuple]:
    """Split "name(arg,arg)" into its kind and parsed arguments."""
    m = _GEN_RE.match(text.strip())
    if not m:
        raise ParameterError(f"bad generator spec {text!r}")
    kind, raw = m.group(1), m.group(2)
    args = [t.strip() for t in raw.split(",")] if raw.strip() else []
    if kind == "uniform":
        if len(args) != 2:
            raise ParameterError("uniform takes (p_a, p_b)")
        pa, pb = Fraction(args[0]), Fraction(args[1])
        if not (0 <= pa <= 1 and 0 <= pb <= 1):
            raise ParameterError("probabilities must lie in [0, 1]")
        return kind, (pa, pb)
    if kind == "perfectly_unbalanced":
        if len(args) != 1:
            raise ParameterError("perfectly_unbalanced takes (alpha)")
        alpha = Fraction(args[0])
        if not 0 <= alpha <= Fraction(1, 2):
            raise ParameterError("alpha must lie in [0, 1/2]")
        return kind, (alpha,)
    if kind == "planted_lcs":
        if len(args) != 1:
            raise ParameterError("planted_lcs takes (rho)")
        rho = Fraction(args[0])
        if not 0 <= rho <= 1:
            raise ParameterError("rho must lie in [0, 1]")
        return kind, (rho,)
    if kind == "case_targeted":
        if len(args) != 1 or args[0] not in ALL_BRANCHES:
            raise ParameterError(
                f"case_targeted takes one branch id from {ALL_BRANCHES}"
            )
        return kind, (args[0],)
    if kind == "exhaustive":
        if len(args) != 1:
            raise ParameterError("exhaustive takes (max_len)")
        return kind, (int(args[0]),)
    raise ParameterError(f"unknown generator {kind!r}")


def _bernoulli(rng: np.random.Generator, n: int, p: Fraction) -> np.ndarray:
    return (rng.random(n) < float(p)).astype(np.uint8)


def _exact_count_bits(rng: np.random.Generator, n: int, ones: int) -> np.ndarray:
    bits = np.zeros(n, dtype=np.uint8)
    if ones:
        bits[rng.permutation(n)[:ones]] = 1
    return bits


def _planted(rng: np.random.Generator, n: int, rho: Fraction) -> tuple[np.ndarray, np.ndarray]:
    m = int(rho * n)
    core = rng.integers(0, 2, m, dtype=np.uint8) if m else np.zeros(0, dtype=np.uint8)
    out = []
    for _ in range(2):
        bits = rng.integers(0, 2, n, dtype=np.uint8)
        if m:
            pos = np.sort(rng.permutation(n)[:m])
            bits[pos] = core
        out.append(bits)
    return out[0], out[1]


def generate(spec: InstanceSpec) -> tuple[BitStringView, BitStringView]:
    """Deterministic pair for a point generator (exhaustive specs are expanded by audits)."""
    kind, args = parse_generator(spec.generator)
    n = spec.n
    if n < 0:
        raise ParameterError("n must be non-negative")
    rng = _rng(spec.seed)
    if kind == "uniform":
        pa, pb = args
        return BitStringView(_bernoulli(rng, n, pa)), BitStringView(_bernoulli(rng, n, pb))
    if kind == "perfectly_unbalanced":
        (alpha,) = args
        k = int(alpha * n + Fraction(1, 2))
        a = _exact_count_bits(rng, n, k)
        b = 1 - _exact_count_bits(rng, n, k)
        return BitStringView(a), BitStringView(b)
    if kind == "planted_lcs":
        (rho,) = args
        a, b = _planted(rng, n, rho)
        return BitStringView(a), BitStringView(b)
    if kind == "case_targeted":
        (branch,) = args
        return _generate_case_targeted(branch, n, spec.seed)
    raise ParameterError(f"generator {kind!r} does not produce single instances")


def exhaustive_pairs(max_len: int):
    """All equal-length pairs up to max_len, in a fixed enumeration order."""
    for length in range(1, max_len + 1):
        for a_code in range(1 << length):
            abits = [(a_code >> i) & 1 for i in range(length)]
            a = BitStringView.from_bits(abits)
            for b_code in range(1 << length):
                bbits = [(b_code >> i) & 1 for i in range(length)]
                yield (length, a_code, b_code), a, BitStringView.from_bits(bbits)


# -- branch-targeted construction -------------------------------------------


def _region_fill(rng: np.random.Generator, length: int, ones: int, style: int) -> np.ndarray:
    if not 0 <= ones <= length:
        raise GenerationError(f"region of length {length} cannot hold {ones} ones")
    bits = np.zeros(length, dtype=np.uint8)
    if style == 1:
        bits[:ones] = 1
    elif style == 2:
        bits[length - ones :] = 1
    else:
        if ones:
            bits[rng.permutation(length)[:ones]] = 1
    return bits


def _assemble(
    rng: np.random.Generator, n: int, k: int, ones_a: tuple, ones_b: tuple, styles=(0, 0, 0, 0, 0, 0)
) -> tuple[BitStringView, BitStringView]:
    lens = (k, n - 2 * k, k)
    a = np.concatenate([_region_fill(rng, lens[i], ones_a[i], styles[i]) for i in range(3)])
    b = np.concatenate([_region_fill(rng, lens[i], ones_b[i], styles[3 + i]) for i in range(3)])
    return BitStringView(a), BitStringView(b)


def _case_recipe(branch: str, n: int, rng: np.random.Generator, attempt: int):
    """Region count layout aimed at one dispatch branch; free counts vary by attempt."""
    m = n // 11
    if m < 2:
        raise GenerationError(f"n={n} too small for branch-targeted construction")
    k = 4 * m
    mid = n - 2 * k
    # A rows give per-region ones of A (summing to k); B rows give per-region
    # ones of B (region length minus zeros; zeros sum to k).
    table = {
        "case1b": ((m, m, 2 * m), (4 * m, mid - m, m)),
        "case1c": ((0, m, 3 * m), (4 * m, mid - 2 * m, 2 * m)),
        "case3": ((m, 2 * m, m), (2 * m, mid, 2 * m)),
        "case4": ((2 * m, 0, 2 * m), (3 * m, mid - 2 * m, 3 * m)),
        "case5": ((m, m, 2 * m), (2 * m, mid - m, 3 * m)),
        "case6": ((2 * m, m, m), (3 * m, mid - m, 2 * m)),
    }
    if branch in ("case1a_greedy", "case1a_split"):
        # Mid-band on the right. Both recipes put half of B's zeros at the
        # front of its left region; whether the rest sit at the front or the
        # back of the right region decides if the sweep can profitably extend
        # the split into it, which is what separates the two sub-branches.
        b_ones = (2 * m, mid, 2 * m)
        right_style = 2 if branch == "case1a_greedy" else 1
        styles = (0, 0, 0, 2, 0, right_style)
        return k, (m, m, 2 * m), b_ones, styles
    if branch not in table:
        raise GenerationError(f"no construction recipe for branch {branch!r}")
    ones_a, ones_b = table[branch]
    return k, ones_a, ones_b, (0, 0, 0, 0, 0, 0)


def _generate_case_targeted(branch: str, n: int, seed: int) -> tuple[BitStringView, BitStringView]:
    """Construct, then verify against the engine; resample until the branch fires."""
    estimator = ExactEstimator()
    reversed_family = branch.startswith("case2_")
    recipe_branch = branch.replace("case2_1", "case1", 1) if reversed_family else branch

    for attempt in range(TARGET_ATTEMPTS):
        rng = _rng(seed, lane=attempt + 1)
        if recipe_branch == BRANCH_DEGENERATE:
            a = BitStringView(_bernoulli(rng, n, Fraction(1, 2)))
            b = BitStringView(_bernoulli(rng, n, Fraction(1, 2)))
        elif recipe_branch == "unbalanced_gate":
            a = BitStringView(_exact_count_bits(rng, n, max(1, (3 * n) // 10)))
            b = BitStringView(1 - _exact_count_bits(rng, n, max(2, (4 * n) // 10)))
        elif recipe_branch == "balanced_gate":
            a = BitStringView(_exact_count_bits(rng, n, n // 2))
            b = BitStringView(1 - _exact_count_bits(rng, n, n - n // 2))
        else:
            k, ones_a, ones_b, styles = _case_recipe(recipe_branch, n, rng, attempt)
            a, b = _assemble(rng, n, k, ones_a, ones_b, styles)
        if reversed_family:
            a, b = a.reverse(), b.reverse()
        counts = (a.ones(), a.zeros(), b.ones(), b.zeros())
        params = derive_params(n, counts, estimator.factor)
        if branch != BRANCH_DEGENERATE:
            params = machine_params(params)
        _, report = approx_lcs(a, b, estimator, params=params)
        if report.branch_id == branch:
            return a, b
    raise GenerationError(
        f"no instance reporting branch {branch!r} after {TARGET_ATTEMPTS} attempts (n={n}, seed={seed})"
    )
