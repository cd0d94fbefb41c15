"""Gaussian space: quadrature, Ornstein-Uhlenbeck semigroup, LSI and Herbst checks"""

from .quadrature import QuadratureRule, gauss_hermite_rule, uniform_gaussian_rule
from .functions import SmoothTestFunction
from .ou import ou_apply, ou_gradient_check
from .inequalities import (
    fisher_information_check,
    gaussian_concentration_check,
    gaussian_lsi_check,
    herbst_differential_check,
    herbst_mgf_check,
    ou_hypercontractivity_check,
)

__all__ = [
    "QuadratureRule",
    "SmoothTestFunction",
    "gauss_hermite_rule",
    "uniform_gaussian_rule",
    "ou_apply",
    "ou_gradient_check",
    "fisher_information_check",
    "gaussian_concentration_check",
    "gaussian_lsi_check",
    "herbst_differential_check",
    "herbst_mgf_check",
    "ou_hypercontractivity_check",
]
