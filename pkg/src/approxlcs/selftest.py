"""Fast built-in checks over exhaustive small instances.

A trimmed version of the test suite for field use; the full
property/acceptance suites live under tests/.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .bitstrings import BitStringView, verify_witness
from .editdistance import ExactEstimator, exact_edit_distance
from .engine import approx_lcs
from .generators import InstanceSpec, exhaustive_pairs, generate
from .oracles import lcs_bruteforce, lcs_dp, lcs_length
from .params import derive_params, machine_params
from .subroutines import best_match_value, greedy, match


def _check(ok: bool, label: str, verbose: bool) -> bool:
    if verbose:
        print(f"{'PASS' if ok else 'FAIL'}  {label}")
    return ok


def run(verbose: bool = True, max_len: int = 6) -> int:
    estimator = ExactEstimator()
    all_ok = True

    ok = True
    for _, a, b in exhaustive_pairs(max_len):
        r = lcs_dp(a, b)
        if r.lcs_length != lcs_bruteforce(a, b) or not verify_witness(a, b, r.witness):
            ok = False
            break
    all_ok &= _check(ok, f"oracle equals brute force, exhaustive length <= {max_len}", verbose)

    ok = True
    for _, a, b in exhaustive_pairs(max_len):
        for sym in (0, 1):
            w = match(a, b, sym)
            expect = min(a.count(0, len(a), sym), b.count(0, len(b), sym))
            if len(w) != expect or not verify_witness(a, b, w):
                ok = False
                break
    all_ok &= _check(ok, "single-symbol match equals its count formula", verbose)

    ok = True
    for _, a, b in exhaustive_pairs(max_len):
        if 2 * best_match_value(a, b) < lcs_length(a, b):
            ok = False
            break
    all_ok &= _check(ok, "best match is at least half the exact LCS", verbose)

    ok = True
    for _, a1, b in exhaustive_pairs(4):
        for _, a2, _b2 in exhaustive_pairs(3):
            w, split = greedy(a1, a2, b)
            brute = max(
                best_match_value(a1, b.substring(0, s)) + best_match_value(a2, b.substring(s, len(b)))
                for s in range(len(b) + 1)
            )
            if split.total != brute or len(w) != brute:
                ok = False
                break
    all_ok &= _check(ok, "greedy sweep equals the split brute force", verbose)

    ok = True
    for _, a, b in exhaustive_pairs(max_len):
        d, w = exact_edit_distance(a, b)
        if d != len(a) + len(b) - 2 * lcs_length(a, b) or len(w) * 2 != len(a) + len(b) - d:
            ok = False
            break
    all_ok &= _check(ok, "indel distance matches the subsequence identity", verbose)

    ok = True
    for seed in range(60):
        spec = InstanceSpec("uniform(0.5,0.5)", 40 + 7 * seed, seed)
        a, b = generate(spec)
        counts = (a.ones(), a.zeros(), b.ones(), b.zeros())
        params = machine_params(derive_params(len(a), counts, 1))
        w, _ = approx_lcs(a, b, estimator, params=params)
        lo = math.ceil((Fraction(1, 2) + params.epsilon) * lcs_length(a, b)) - 1
        if not verify_witness(a, b, w) or len(w) < lo:
            ok = False
            break
    all_ok &= _check(ok, "dispatch machine meets the guarantee on seeded instances", verbose)

    if verbose:
        print("selftest", "PASS" if all_ok else "FAIL")
    return 0 if all_ok else 1
