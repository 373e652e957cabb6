"""Better-than-half approximate LCS for binary strings.

The engine reduces approximate LCS to an approximate edit-distance black box
and composes linear-time single-symbol matches around it; every output is a
certified witness. Oracles and the audit harness live alongside for
verification at desk scale.
"""

from .bitstrings import (
    BitStringView,
    SubsequenceWitness,
    SymmetryTransform,
    apply_transform,
    concat_witnesses,
    pull_back_witness,
    verify_witness,
)
from .editdistance import (
    AdversarialEstimator,
    EditEstimate,
    ExactEstimator,
    approx_ed_value,
    exact_edit_distance,
    indel_distance,
    parse_estimator,
)
from .engine import (
    BranchReport,
    Case1aQuantities,
    TripartiteSplit,
    approx_lcs,
    balanced_gate,
    dispatch_case,
    unbalanced_gate,
)
from .generators import InstanceSpec, generate
from .params import ReductionParams, derive_params, machine_params

__all__ = [
    "AdversarialEstimator",
    "BitStringView",
    "BranchReport",
    "Case1aQuantities",
    "EditEstimate",
    "ExactEstimator",
    "InstanceSpec",
    "ReductionParams",
    "SubsequenceWitness",
    "SymmetryTransform",
    "TripartiteSplit",
    "approx_ed_value",
    "approx_lcs",
    "apply_transform",
    "balanced_gate",
    "concat_witnesses",
    "derive_params",
    "dispatch_case",
    "exact_edit_distance",
    "generate",
    "indel_distance",
    "machine_params",
    "parse_estimator",
    "pull_back_witness",
    "unbalanced_gate",
    "verify_witness",
]

__version__ = "0.1.0"
