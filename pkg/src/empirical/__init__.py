"""Suprema of empirical processes: exact and Monte Carlo tail verification"""

from .process import (
    MAX_EXACT_POINTS,
    LawMode,
    ProcessInstance,
    SupStatistics,
    random_instance,
    sign_instance,
    supremum_law,
)
from .tails import (
    TruncationPair,
    balanced_truncation_level,
    bernstein_bound,
    bernstein_tail_check,
    poisson_h,
    poisson_mgf_check,
    poisson_tail_check,
    symmetrization_v_bound,
    talagrand_bound,
    talagrand_tail_check,
    truncation_split,
    truncation_tail_check,
)

__all__ = [
    "MAX_EXACT_POINTS",
    "LawMode",
    "ProcessInstance",
    "SupStatistics",
    "random_instance",
    "sign_instance",
    "supremum_law",
    "TruncationPair",
    "balanced_truncation_level",
    "bernstein_bound",
    "bernstein_tail_check",
    "poisson_h",
    "poisson_mgf_check",
    "poisson_tail_check",
    "symmetrization_v_bound",
    "talagrand_bound",
    "talagrand_tail_check",
    "truncation_split",
    "truncation_tail_check",
]
