"""Talagrand's convex distance on finite product spaces"""

from .distance import (
    MAX_ENUMERATION_POINTS,
    DualMethod,
    convex_distance,
    dual_distance,
    sphere_grid,
    weighted_hamming_to_set,
)
from .inequalities import (
    CorollaryMode,
    bernoulli_norm_check,
    binary_cube,
    convex_distance_chain,
    convex_distance_moment,
    corollary_concentration,
    dual_identity_check,
    median,
    normalized_count,
    square_lipschitz_check,
    verify_corollary_hypothesis,
)
from .min_norm import MinNormResult, min_norm_point
from .patterns import HullInstance, PatternSet, build_hull

__all__ = [
    "MAX_ENUMERATION_POINTS",
    "DualMethod",
    "convex_distance",
    "dual_distance",
    "sphere_grid",
    "weighted_hamming_to_set",
    "CorollaryMode",
    "bernoulli_norm_check",
    "binary_cube",
    "convex_distance_chain",
    "convex_distance_moment",
    "corollary_concentration",
    "dual_identity_check",
    "median",
    "normalized_count",
    "square_lipschitz_check",
    "verify_corollary_hypothesis",
    "MinNormResult",
    "min_norm_point",
    "HullInstance",
    "PatternSet",
    "build_hull",
]
