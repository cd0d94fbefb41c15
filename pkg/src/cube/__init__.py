"""Biased cube: generators, semigroup and functional inequalities"""

from .biased_cube import BiasedCube, CubeFunction
from .dynamics import (
    DirichletRepresentation,
    coordinate_generator,
    dirichlet_form,
    generator,
    semigroup_apply,
    semigroup_series,
)
from .inequalities import (
    dirichlet_convexity_check,
    gross_convexity_check,
    gross_flow_check,
    hypercontractive_time,
    hypercontractivity_check,
    hypercontractivity_violation_probe,
    l2_decay_check,
    lsi_check,
    poincare_check,
)

__all__ = [
    "BiasedCube",
    "CubeFunction",
    "DirichletRepresentation",
    "coordinate_generator",
    "dirichlet_form",
    "generator",
    "semigroup_apply",
    "semigroup_series",
    "dirichlet_convexity_check",
    "gross_convexity_check",
    "gross_flow_check",
    "hypercontractive_time",
    "hypercontractivity_check",
    "hypercontractivity_violation_probe",
    "l2_decay_check",
    "lsi_check",
    "poincare_check",
]
