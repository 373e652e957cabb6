"""Scalar parameters of the reduction, kept as exact rationals.

Threshold comparisons downstream go through Fraction-against-int comparisons,
which Python evaluates by integer cross-multiplication, so branch decisions
are bit-exact and reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .errors import ParameterError


@dataclass(frozen=True)
class ReductionParams:
    """All scalars the dispatch machine consumes.

    alpha_n is the minimum of the four symbol counts (an absolute count);
    beta, gamma, delta, epsilon are normalized rationals; beta_n = beta * n is
    the band width in count units. Two robustness widths are recorded: the
    whole-string gate width (10 * beta) and the right-subproblem width
    (4 * beta / alpha), the latter only defined when alpha_n > 0.
    """

    n: int
    alpha_n: int
    c: Fraction
    gamma: Fraction
    beta: Fraction
    beta_n: Fraction
    delta: Fraction
    epsilon: Fraction
    beta_prime_gate: Fraction
    beta_prime_sub: Fraction | None
    degenerate_threshold: int

    def __post_init__(self):
        if not 0 < self.gamma < Fraction(1, 2):
            raise ParameterError(f"gamma {self.gamma} outside (0, 1/2)")
        if self.beta * 100 * self.n > self.gamma * self.alpha_n:
            raise ParameterError("beta exceeds gamma * alpha / 100")
        if self.delta * 100 > self.gamma:
            raise ParameterError("delta exceeds gamma / 100")
        if self.epsilon * 6 > self.gamma:
            raise ParameterError("epsilon exceeds gamma / 6")

    # Count-unit helpers used by the dispatch conditions.

    @property
    def half_alpha(self) -> Fraction:
        return Fraction(self.alpha_n, 2)

    @property
    def delta_alpha_n(self) -> Fraction:
        return self.delta * self.alpha_n

    def band(self, multiple: int) -> Fraction:
        """multiple * beta in count units."""
        return self.beta_n * multiple

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "alpha_n": self.alpha_n,
            "c": str(self.c),
            "gamma": str(self.gamma),
            "beta": str(self.beta),
            "delta": str(self.delta),
            "epsilon": str(self.epsilon),
            "degenerate_threshold": self.degenerate_threshold,
        }


def _derive(n: int, alpha_n: int, c: Fraction) -> ReductionParams:
    gamma = 1 / (8 * (3 * c + 1))
    beta = gamma * alpha_n / (100 * n)
    beta_n = gamma * Fraction(alpha_n, 100)
    delta = gamma / 100
    epsilon = min(delta / 2, gamma / 200)
    thr = 200 / gamma
    degenerate_threshold = -(-thr.numerator // thr.denominator)
    sub = (4 * beta * n / alpha_n) if alpha_n else None
    return ReductionParams(
        n=n,
        alpha_n=alpha_n,
        c=c,
        gamma=gamma,
        beta=beta,
        beta_n=beta_n,
        delta=delta,
        epsilon=epsilon,
        beta_prime_gate=10 * beta,
        beta_prime_sub=sub,
        degenerate_threshold=degenerate_threshold,
    )


@lru_cache(maxsize=4096)
def _derive_cached(n: int, alpha_n: int, c: Fraction) -> ReductionParams:
    return _derive(n, alpha_n, c)


def derive_params(
    n: int, counts: tuple[int, int, int, int], c: Fraction | int = 1
) -> ReductionParams:
    """Derive all reduction scalars from the instance counts.

    counts is (ones_a, zeros_a, ones_b, zeros_b). The estimator factor c fixes
    gamma = 1 / (8 * (3c + 1)); the remaining scalars follow so that every
    inequality the branch analysis consumes holds with slack.
    """
    if n < 1:
        raise ParameterError("n must be at least 1")
    ones_a, zeros_a, ones_b, zeros_b = counts
    if ones_a + zeros_a != n or ones_b + zeros_b != n:
        raise ParameterError(f"counts {counts} inconsistent with n={n}")
    if min(counts) < 0:
        raise ParameterError("negative count")
    c = Fraction(c)
    if c < 1:
        raise ParameterError(f"estimator factor must be >= 1, got {c}")
    return _derive_cached(n, min(counts), c)


def machine_params(params: ReductionParams) -> ReductionParams:
    """Same scalars with the exact-small gate disabled.

    Used by branch-targeted generation and small-scale dispatch studies where
    the case machine itself is the object under test.
    """
    return replace(params, degenerate_threshold=0)
