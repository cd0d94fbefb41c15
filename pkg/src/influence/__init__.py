"""L¹-L² variance inequality and influences"""

from .kkl import (
    InfluenceProfile,
    dictator,
    influences,
    kkl_check,
    majority,
    parity,
    random_monotone,
    tribes,
)
from .l1l2 import (
    GENERAL_K,
    SYMMETRIC_K,
    CoordinateNorms,
    L1L2Form,
    coordinate_norms,
    default_constant,
    delta_operator,
    delta_operator_bridge,
    l1l2_bound,
    l1l2_reports,
    variance_representation_check,
)

__all__ = [
    "InfluenceProfile",
    "dictator",
    "influences",
    "kkl_check",
    "majority",
    "parity",
    "random_monotone",
    "tribes",
    "GENERAL_K",
    "SYMMETRIC_K",
    "CoordinateNorms",
    "L1L2Form",
    "coordinate_norms",
    "default_constant",
    "delta_operator",
    "delta_operator_bridge",
    "l1l2_bound",
    "l1l2_reports",
    "variance_representation_check",
]
