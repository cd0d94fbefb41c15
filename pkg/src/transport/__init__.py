"""Quadratic optimal transport and the Gaussian transportation inequality"""

from .duality import (
    dual_objective,
    hamilton_jacobi_residual,
    hopf_lax,
    hopf_lax_exponential_check,
    kantorovich_duality_check,
    kantorovich_duality_gap,
)
from .measures import (
    DiscreteMeasure,
    discretized_gaussian,
    is_absolutely_continuous,
    relative_entropy,
)
from .simplex import (
    DualPotentials,
    TransportPlan,
    W2Solution,
    linprog_cost,
    quantile_cost,
    squared_costs,
    transportation_simplex,
    w2,
)
from .t2 import (
    gauss_hermite_refinement,
    gaussian_tilt_density,
    random_lipschitz_density,
    shift_density,
    shift_family,
    t2_check,
)

__all__ = [
    "dual_objective",
    "hamilton_jacobi_residual",
    "hopf_lax",
    "hopf_lax_exponential_check",
    "kantorovich_duality_check",
    "kantorovich_duality_gap",
    "DiscreteMeasure",
    "discretized_gaussian",
    "is_absolutely_continuous",
    "relative_entropy",
    "DualPotentials",
    "TransportPlan",
    "W2Solution",
    "linprog_cost",
    "quantile_cost",
    "squared_costs",
    "transportation_simplex",
    "w2",
    "gauss_hermite_refinement",
    "gaussian_tilt_density",
    "random_lipschitz_density",
    "shift_density",
    "shift_family",
    "t2_check",
]
