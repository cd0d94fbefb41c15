"""Hopf-Lax infimum convolution and the Kantorovich dual of W₂²/2"""

from typing import Callable, Iterable, Optional

import numpy as np
from scipy.special import logsumexp

from ..core.errors import DomainError
from ..core.report import VerificationReport
from ..gauss.quadrature import QuadratureRule
from .measures import DiscreteMeasure
from .simplex import W2Solution, squared_costs, w2


def _as_points(grid: np.ndarray) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    return grid[:, None] if grid.ndim == 1 else grid


def hopf_lax(
    phi: np.ndarray, s: float, grid: np.ndarray, targets: Optional[np.ndarray] = None
) -> np.ndarray:
    """
    Q_s φ(x) = min over grid points y of φ(y) + ‖x - y‖²/(2s).

    Args:
        phi: values of φ on grid
        s: time, > 0
        grid: (k,) or (k, d) points where φ is known
        targets: points x to evaluate at (default: the grid itself)
    """
    if s <= 0:
        raise DomainError(f"Hopf-Lax time must be positive, got {s}")
    ys = _as_points(grid)
    xs = ys if targets is None else _as_points(targets)
    phi = np.asarray(phi, dtype=float).reshape(-1)
    if phi.size != ys.shape[0]:
        raise DomainError(f"{phi.size} values of φ for {ys.shape[0]} grid points")
    distances = np.sum((xs[:, None, :] - ys[None, :, :]) ** 2, axis=2)
    return np.min(phi[None, :] + distances / (2.0 * s), axis=1)


def dual_objective(mu: DiscreteMeasure, nu: DiscreteMeasure, phi: np.ndarray) -> float:
    """∫ Q₁φ dμ - ∫ φ dν for φ on the support of ν"""
    q = hopf_lax(phi, 1.0, nu.support, mu.support)
    return float(mu.weights @ q - nu.weights @ phi)


def _c_transform_step(mu: DiscreteMeasure, nu: DiscreteMeasure, phi: np.ndarray) -> np.ndarray:
    """Smallest φ' with Q₁φ' ≥ Q₁φ on supp μ; never lowers the dual objective"""
    half_costs = squared_costs(mu, nu) / 2.0
    q = np.min(phi[None, :] + half_costs, axis=1)
    return np.max(q[:, None] - half_costs, axis=0)


def kantorovich_duality_gap(
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    phi_candidates: Iterable[np.ndarray] = (),
    solution: Optional[W2Solution] = None,
    iterations: int = 3,
) -> float:
    """
    (1/2)W₂² minus the best dual value ∫Q₁φ dμ - ∫φ dν over a family of φ.

    The family always contains φ = -v/2 from the simplex potentials, refined by
    c-transform steps, plus any supplied candidates.
    """
    solution = solution or w2(mu, nu)
    half = solution.plan.cost / 2.0
    phi = -solution.potentials.phi / 2.0
    best = dual_objective(mu, nu, phi)
    for _ in range(iterations):
        phi = _c_transform_step(mu, nu, phi)
        best = max(best, dual_objective(mu, nu, phi))
    for candidate in phi_candidates:
        best = max(best, dual_objective(mu, nu, np.asarray(candidate, dtype=float)))
    return half - best


def kantorovich_duality_check(
    mu: DiscreteMeasure, nu: DiscreteMeasure, solution: Optional[W2Solution] = None
) -> VerificationReport:
    """Dual value must not exceed W₂²/2 and must reach it within 1%"""
    solution = solution or w2(mu, nu)
    half = solution.plan.cost / 2.0
    gap = kantorovich_duality_gap(mu, nu, solution=solution)
    return VerificationReport.compare(
        "kantorovich_duality_gap",
        abs(gap),
        0.01 * half,
        1e-9,
        half_w2_squared=half,
        dual_value=half - gap,
    )


def hamilton_jacobi_residual(
    phi: Callable[[np.ndarray], np.ndarray],
    grid: np.ndarray,
    s: float,
    ds: float = 1e-3,
    interior: float = 0.5,
) -> float:
    """
    max |∂_s Q + |∂_x Q|²/2| over the interior of a 1-D grid, by central differences.

    Diagnostic only; accuracy is bounded by the grid resolution.
    """
    grid = np.asarray(grid, dtype=float)
    if s <= ds:
        raise DomainError("s must exceed the time step")
    values = phi(grid)
    later = hopf_lax(values, s + ds, grid)
    earlier = hopf_lax(values, s - ds, grid)
    now = hopf_lax(values, s, grid)
    dt = (later - earlier) / (2 * ds)
    dx = np.gradient(now, grid)
    span = grid.max() - grid.min()
    inside = (grid > grid.min() + interior * span / 2) & (grid < grid.max() - interior * span / 2)
    return float(np.max(np.abs(dt + dx**2 / 2)[inside]))


def hopf_lax_exponential_check(
    phi: Callable[[np.ndarray], np.ndarray], rule: QuadratureRule, tolerance: float = 1e-9
) -> VerificationReport:
    """log ∫ e^{Q₁φ} dγ ≤ ∫ φ dγ on the nodes of a rule (diagnostic)"""
    values = phi(rule.nodes)
    q = hopf_lax(values, 1.0, rule.nodes)
    lhs = float(logsumexp(q, b=rule.weights))
    rhs = float(rule.weights @ values)
    return VerificationReport.compare(
        "hopf_lax_exponential",
        lhs,
        rhs,
        tolerance * max(1.0, abs(rhs)),
        witness=f"{rule.kind}:{rule.order}",
        diagnostic=True,
    )
