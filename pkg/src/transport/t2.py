"""Quadratic transportation cost inequality W₂(μ,γ)² ≤ 2 H(μ|γ) on discretized Gaussians"""

from typing import Callable, List, Optional, Sequence, Union

import numpy as np
from loguru import logger

from ..core.errors import DomainError
from ..core.report import VerificationReport
from ..gauss.quadrature import QuadratureRule, gauss_hermite_rule, uniform_gaussian_rule
from .measures import DiscreteMeasure, discretized_gaussian, relative_entropy
from .simplex import MAX_SIDE, w2

Density = Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]

T2_TOLERANCE = 1e-6
REFINEMENT_ORDERS = (16, 32, 64)


def t2_check(
    density: Density,
    gamma: DiscreteMeasure,
    tolerance: float = T2_TOLERANCE,
    diagnostic: bool = False,
) -> VerificationReport:
    """
    lhs = W₂(μ, γ)², rhs = 2 H(μ|γ) with μ = f·γ renormalized.

    The discrete inequality is a surrogate for the Gaussian one and holds up to
    lattice effects; details record the support size.
    """
    if gamma.dimension > 2:
        raise DomainError("t2_check runs in dimension 1 or 2")
    mu = gamma.reweight(density)
    distance, plan, _ = w2(mu, gamma)
    entropy = relative_entropy(mu, gamma)
    return VerificationReport.compare(
        "t2_transport",
        distance**2,
        2.0 * entropy,
        tolerance,
        witness=f"nodes={gamma.size} dim={gamma.dimension}",
        diagnostic=diagnostic,
        entropy=entropy,
        surrogate="quadrature-discretized gamma",
    )


def shift_density(b: Union[float, Sequence[float]]) -> Callable[[np.ndarray], np.ndarray]:
    """e^{⟨b,x⟩ - |b|²/2}: the density of γ shifted by b"""
    shift = np.atleast_1d(np.asarray(b, dtype=float))

    def density(x: np.ndarray) -> np.ndarray:
        points = x[:, None] if x.ndim == 1 else x
        return np.exp(points @ shift - shift @ shift / 2)

    return density


def gaussian_tilt_density(mean: float, std: float) -> Callable[[np.ndarray], np.ndarray]:
    """Density of N(mean, std²) w.r.t. γ in every coordinate"""
    if std <= 0:
        raise DomainError(f"std must be positive, got {std}")

    def density(x: np.ndarray) -> np.ndarray:
        points = x[:, None] if x.ndim == 1 else x
        exponent = -((points - mean) ** 2) / (2 * std**2) + points**2 / 2
        return np.prod(np.exp(exponent) / std, axis=1)

    return density


def random_lipschitz_density(
    rng: np.random.Generator,
    lipschitz: float = 1.0,
    knots: int = 9,
    half_width: float = 4.0,
) -> Callable[[np.ndarray], np.ndarray]:
    """
    e^V with V piecewise linear through seeded knots on [-half_width, half_width].

    Slopes are uniform in [-lipschitz, lipschitz] and V is flat outside the knots, so
    log f is lipschitz-Lipschitz in each coordinate.
    """
    if lipschitz <= 0 or knots < 2 or half_width <= 0:
        raise DomainError("need lipschitz > 0, knots >= 2 and half_width > 0")
    grid = np.linspace(-half_width, half_width, knots)
    slopes = rng.uniform(-lipschitz, lipschitz, size=knots - 1)
    values = np.concatenate([[0.0], np.cumsum(slopes * np.diff(grid))])

    def density(x: np.ndarray) -> np.ndarray:
        points = x[:, None] if x.ndim == 1 else x
        return np.exp(np.interp(points, grid, values).sum(axis=1))

    return density


def shift_family(
    b: float = 0.5, spacings: Optional[Sequence[float]] = None, half_width: float = 8.0
) -> List[VerificationReport]:
    """
    t2_check for the shift by b on uniform lattices that contain b.

    A shift by a lattice multiple is an index translation, so W₂² = b² = 2H holds
    on the lattice up to rounding. Default spacings are b, b/2, b/4; the half width
    shrinks so no lattice exceeds the solver size cap.
    """
    spacings = spacings or (b, b / 2, b / 4)
    half_width = min(half_width, (MAX_SIDE - 1) // 2 * min(spacings))
    reports = []
    for spacing in spacings:
        if abs(b / spacing - round(b / spacing)) > 1e-12:
            raise DomainError(f"shift {b} is not a multiple of the spacing {spacing}")
        rule: QuadratureRule = uniform_gaussian_rule(spacing=spacing, half_width=half_width)
        report = t2_check(shift_density(b), discretized_gaussian(rule))
        details = {**report.details, "spacing": spacing}
        reports.append(report.model_copy(update={"details": details}))
        logger.debug(f"T2 shift b={b} spacing={spacing}: margin={report.margin:.3e}")
    return reports


def gauss_hermite_refinement(
    density: Density, label: str, orders: Sequence[int] = REFINEMENT_ORDERS
) -> List[VerificationReport]:
    """
    Diagnostic t2_check of one density on 1-D Gauss–Hermite rules of increasing order.

    One report per order, then "t2_refinement_gap" with lhs the largest growth of
    |margin| from one order to the next (≤ 0 when the gap shrinks monotonically).
    None of these reports gate the exit code.
    """
    if len(orders) < 1:
        raise DomainError("need at least one quadrature order")
    reports = []
    for order in orders:
        report = t2_check(density, discretized_gaussian(gauss_hermite_rule(order)), diagnostic=True)
        details = {**report.details, "order": int(order), "density": label}
        reports.append(report.model_copy(update={"details": details}))
        logger.debug(f"T2 {label} on {order} Gauss-Hermite nodes: margin={report.margin:.3e}")
    gaps = [abs(r.margin) for r in reports]
    growth = max((later - earlier for earlier, later in zip(gaps, gaps[1:])), default=0.0)
    reports.append(
        VerificationReport.compare(
            "t2_refinement_gap",
            growth,
            0.0,
            T2_TOLERANCE,
            witness=label,
            diagnostic=True,
            finest_margin=reports[-1].margin,
        )
    )
    return reports
