"""Exception types shared across the package."""


class ApproxLcsError(Exception):
    """Base class for all package errors."""


class RangeError(ApproxLcsError, ValueError):
    """A half-open range fell outside the string it indexes."""


class ParseError(ApproxLcsError, ValueError):
    """Input text is not a line of '0'/'1' characters."""


class WitnessError(ApproxLcsError, ValueError):
    """A subsequence witness failed certification."""


class ParameterError(ApproxLcsError, ValueError):
    """Inconsistent counts or an out-of-range parameter."""


class EstimatorError(ApproxLcsError, RuntimeError):
    """The edit-distance estimator failed or broke its contract."""


class GenerationError(ApproxLcsError, RuntimeError):
    """Instance generation could not satisfy its target."""


class DispatchExhaustionError(ApproxLcsError, RuntimeError):
    """No dispatch branch matched; carries the four region counts.

    This is expected to be unreachable; reaching it means the condition
    system lost coverage somewhere.
    """

    def __init__(self, ones_lb: int, ones_rb: int, zeros_la: int, zeros_ra: int):
        self.region_counts = (ones_lb, ones_rb, zeros_la, zeros_ra)
        super().__init__(
            "no dispatch case matched region counts "
            f"1(L_B)={ones_lb} 1(R_B)={ones_rb} 0(L_A)={zeros_la} 0(R_A)={zeros_ra}"
        )


class OracleInfeasibleError(ApproxLcsError, ValueError):
    """Requested an exact-oracle run above the feasibility cutoff."""
