"""L¹-L² variance inequality on the biased cube"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

import numpy as np
from loguru import logger
from scipy.integrate import quad

from ..core.errors import DomainError
from ..core.report import VerificationReport
from ..cube.biased_cube import BiasedCube, CubeFunction
from ..cube.dynamics import coordinate_generator, semigroup_apply
from ..measure.spaces import FieldFunction, FiniteSpace, ProductSpace

SYMMETRIC_K = 14.0
GENERAL_K = 30.0


class L1L2Form(str, Enum):
    SEMIGROUP = "semigroup_form"
    ORIGINAL = "original_form"
    INTEGRAL = "integral_form"


@dataclass(frozen=True)
class CoordinateNorms:
    """‖L_i f‖₁, ‖L_i f‖₂ and log(‖L_i f‖₂/‖L_i f‖₁) per coordinate"""

    l1: np.ndarray
    l2: np.ndarray
    ratio_log: np.ndarray

    def denominators(self) -> np.ndarray:
        return 1.0 + self.ratio_log


def coordinate_norms(f: CubeFunction) -> CoordinateNorms:
    l1 = np.empty(f.cube.n)
    l2 = np.empty(f.cube.n)
    for i in range(f.cube.n):
        local = coordinate_generator(f, i)
        l1[i] = local.norm(1.0)
        l2[i] = local.norm(2.0)
    # l1 = 0 forces L_i f ≡ 0, hence l2 = 0
    assert np.all((l1 > 0) | (l2 == 0)), "‖L_i f‖₁ vanished with ‖L_i f‖₂ > 0"
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio_log = np.where(l2 > 0, np.log(l2 / np.where(l1 > 0, l1, 1.0)), 0.0)
    return CoordinateNorms(l1=l1, l2=l2, ratio_log=np.maximum(ratio_log, 0.0))


def default_constant(cube: BiasedCube) -> float:
    """K = 14 at p = 1/2, 30 otherwise"""
    return SYMMETRIC_K if abs(cube.p - 0.5) < 1e-12 else GENERAL_K


def _integral_term(f_i: CubeFunction) -> float:
    value, _ = quad(lambda v: f_i.norm(v) ** 2, 1.0, 2.0, epsabs=1e-13, epsrel=1e-11)
    return float(value)


def l1l2_bound(
    f: CubeFunction,
    form: L1L2Form | str = L1L2Form.SEMIGROUP,
    K: Optional[float] = None,
    tolerance: float = 1e-10,
) -> VerificationReport:
    """
    Variance against Σ‖L_i f‖₂² / (1 + log(‖L_i f‖₂/‖L_i f‖₁)).

    Args:
        f: any function; the variance is the left side, so f is centered internally
        form: semigroup_form with constant (2/ρ)e^{4ρ}; original_form with
            K log(2/(p(1-p))) in terms of Δ_i f; integral_form with
            (1/ρ)e^{4ρ} Σ ∫₁² ‖L_i f‖_v² dv
        K: numerical constant for original_form (default 14 at p = 1/2, else 30)

    Returns:
        report with lhs = Var(f); details carry the mean removed
    """
    form = L1L2Form(form)
    cube = f.cube
    mean = f.mean()
    centered = f.centered()
    lhs = centered.norm(2.0) ** 2
    norms = coordinate_norms(centered)
    active = norms.l2 > 0
    series = float(np.sum(norms.l2[active] ** 2 / norms.denominators()[active]))

    details = {"mean_removed": mean, "rho": cube.rho}
    if form is L1L2Form.SEMIGROUP:
        constant = 2.0 / cube.rho * math.exp(4.0 * cube.rho)
        rhs = constant * series
    elif form is L1L2Form.ORIGINAL:
        K = default_constant(cube) if K is None else K
        # ‖Δ_i f‖_r = ‖L_i f‖_r after relabeling, and log(e b) = 1 + log b
        constant = K * math.log(2.0 / (cube.p * cube.q))
        rhs = constant * series
        details["K"] = K
    else:
        constant = math.exp(4.0 * cube.rho) / cube.rho
        rhs = constant * sum(
            _integral_term(coordinate_generator(centered, i)) for i in range(cube.n) if active[i]
        )
    details["constant"] = constant
    return VerificationReport.compare(
        f"l1l2_{form.value}",
        lhs,
        rhs,
        tolerance * max(1.0, lhs, rhs),
        witness=f"n={cube.n} p={cube.p}",
        **details,
    )


def relabeled_space(cube: BiasedCube) -> ProductSpace:
    """{0,1}^n with weight p on 1, in the same enumeration order as the cube"""
    return ProductSpace.power(FiniteSpace.two_point(cube.p, points=(0, 1)), cube.n)


def delta_operator(f: CubeFunction, i: int) -> FieldFunction:
    """
    Δ_i f on {0,1}^n (-1 ↦ 0, +1 ↦ 1).

    Δ_i f(x) = (1-p)(f(x) - f(U_i x)) if x_i = 1, p(f(x) - f(U_i x)) if x_i = 0.
    """
    cube = f.cube
    if not 0 <= i < cube.n:
        raise DomainError(f"coordinate {i} out of range for n = {cube.n}")
    tensor = f.tensor()
    flipped = np.flip(tensor, axis=i)
    factor_shape = [1] * cube.n
    factor_shape[i] = 2
    factor = np.array([cube.p, cube.q]).reshape(factor_shape)
    return FieldFunction(relabeled_space(cube), (factor * (tensor - flipped)).reshape(-1))


def delta_operator_bridge(f: CubeFunction, i: int, tolerance: float = 1e-12) -> VerificationReport:
    """max |Δ_i f + L_i f| over the relabeled cube"""
    delta = delta_operator(f, i)
    local = coordinate_generator(f, i)
    gap = float(np.max(np.abs(delta.values + local.values)))
    scale = max(1.0, float(np.max(np.abs(f.values))))
    return VerificationReport.compare(
        "delta_operator_bridge", gap, 0.0, tolerance * scale, witness=f"i={i}"
    )


def variance_representation_check(
    f: CubeFunction, tolerance: float = 1e-8
) -> List[VerificationReport]:
    """
    Var(f) = 2 ∫₀^∞ Σ_i ‖L_i P_t f‖₂² dt, its unit-time version
    ∫f² - ∫(P₁f)² = 2 ∫₀¹ Σ_i ‖L_i P_t f‖₂² dt,
    and ‖f - ∫f‖₂² ≤ 3 ∫₀¹ Σ_i ‖L_i P_t f‖₂² dt.
    """

    def integrand(t: float) -> float:
        moved = semigroup_apply(f, t)
        return sum(coordinate_generator(moved, i).norm(2.0) ** 2 for i in range(f.cube.n))

    whole, error = quad(integrand, 0.0, np.inf, epsabs=1e-12, epsrel=1e-10, limit=200)
    unit, _ = quad(integrand, 0.0, 1.0, epsabs=1e-13, epsrel=1e-11)
    variance = f.centered().norm(2.0) ** 2
    decrement = f.norm(2.0) ** 2 - semigroup_apply(f, 1.0).norm(2.0) ** 2
    logger.debug(f"variance representation: quad error estimate {error:.2e}")
    scale = tolerance * max(1.0, variance)
    return [
        VerificationReport.compare(
            "variance_representation", abs(2.0 * whole - variance), 0.0, scale, integral=2 * whole
        ),
        VerificationReport.compare(
            "unit_time_representation", abs(2.0 * unit - decrement), 0.0, scale, integral=2 * unit
        ),
        VerificationReport.compare("unit_time_variance", variance, 3.0 * unit, scale),
    ]


def l1l2_reports(f: CubeFunction) -> List[VerificationReport]:
    """Both stated forms plus the integral form for one function"""
    return [l1l2_bound(f, form) for form in L1L2Form]
