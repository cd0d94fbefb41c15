"""Finite measure spaces and the entropy toolbox"""

from .spaces import FieldFunction, FiniteSpace, ProductSpace
from .functionals import (
    ConditionalSlices,
    TensorizationVariant,
    conditional_slices,
    duality_gap_trajectory,
    entropic_bound,
    entropy,
    entropy_duality_gap,
    tensorization_bound,
    variance,
    variational_entropy,
    variational_equality_check,
    variational_formula_check,
)

__all__ = [
    "FieldFunction",
    "FiniteSpace",
    "ProductSpace",
    "ConditionalSlices",
    "TensorizationVariant",
    "conditional_slices",
    "duality_gap_trajectory",
    "entropic_bound",
    "entropy",
    "entropy_duality_gap",
    "tensorization_bound",
    "variance",
    "variational_entropy",
    "variational_equality_check",
    "variational_formula_check",
]
