"""Log-Sobolev, Poincaré and hypercontractivity checks on the biased cube"""

import math
from typing import List, Sequence

import numpy as np
from loguru import logger

from ..core.errors import DomainError, PreconditionError
from ..core.report import VerificationReport
from ..measure.functionals import entropy, variance
from .biased_cube import BiasedCube, CubeFunction
from .dynamics import dirichlet_form, semigroup_apply

THRESHOLD_SLACK = 1e-12


def _scaled(tolerance: float, *values: float) -> float:
    return tolerance * max([1.0, *(abs(v) for v in values if math.isfinite(v))])


def lsi_check(f: CubeFunction, tolerance: float = 1e-10) -> VerificationReport:
    """Ent(f²) ≤ (1/ρ) E(f, f)"""
    cube = f.cube
    squared = f * f
    lhs = 0.0 if not np.any(squared.values > 0) else entropy(squared.to_field())
    rhs = dirichlet_form(f, f) / cube.rho
    return VerificationReport.compare(
        "cube_lsi", lhs, rhs, _scaled(tolerance, lhs, rhs), rho=cube.rho, n=cube.n, p=cube.p
    )


def poincare_check(f: CubeFunction, tolerance: float = 1e-10) -> VerificationReport:
    """Var(f) ≤ E(f, f)"""
    lhs = variance(f.to_field())
    rhs = dirichlet_form(f, f)
    return VerificationReport.compare("cube_poincare", lhs, rhs, _scaled(tolerance, lhs, rhs))


def hypercontractive_time(cube: BiasedCube, p_norm: float, q_norm: float) -> float:
    """Smallest t with e^{4ρt} ≥ (q - 1)/(p - 1)"""
    if not 1.0 < p_norm < q_norm:
        raise DomainError(f"need 1 < p < q, got p={p_norm}, q={q_norm}")
    return math.log((q_norm - 1.0) / (p_norm - 1.0)) / (4.0 * cube.rho)


def _norm_report(
    f: CubeFunction, p_norm: float, q_norm: float, t: float, tolerance: float
) -> VerificationReport:
    lhs = semigroup_apply(f, t).norm(q_norm)
    rhs = f.norm(p_norm)
    return VerificationReport.compare(
        "cube_hypercontractivity",
        lhs,
        rhs,
        _scaled(tolerance, lhs, rhs),
        p_norm=p_norm,
        q_norm=q_norm,
        t=t,
    )


def hypercontractivity_check(
    f: CubeFunction, p_norm: float, q_norm: float, t: float, tolerance: float = 1e-10
) -> VerificationReport:
    """
    ‖P_t f‖_q ≤ ‖f‖_p.

    Raises:
        PreconditionError: if e^{4ρt} < (q - 1)/(p - 1)
    """
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    threshold = hypercontractive_time(f.cube, p_norm, q_norm)
    if t < threshold * (1.0 - THRESHOLD_SLACK):
        raise PreconditionError(
            f"t = {t} is below the hypercontractive threshold {threshold}",
            witness=f"p={p_norm} q={q_norm} rho={f.cube.rho}",
        )
    return _norm_report(f, p_norm, q_norm, t, tolerance)


def hypercontractivity_violation_probe(
    f: CubeFunction,
    p_norm: float,
    q_norm: float,
    times: Sequence[float],
    tolerance: float = 1e-10,
) -> VerificationReport:
    """
    Evaluate the norm inequality below threshold, where it may fail.

    Passes iff some sub-threshold time produced a failing comparison.
    lhs is the smallest margin seen, rhs is 0.
    """
    threshold = hypercontractive_time(f.cube, p_norm, q_norm)
    raw = [_norm_report(f, p_norm, q_norm, t, tolerance) for t in times if t < threshold]
    if not raw:
        raise PreconditionError("no probe time lies below the threshold")
    worst = min(raw, key=lambda r: r.margin)
    violations = sum(1 for r in raw if not r.passed)
    logger.debug(f"violation probe: {violations}/{len(raw)} sub-threshold failures")
    return VerificationReport.compare(
        "hypercontractivity_violation_probe",
        worst.margin + worst.tolerance,
        0.0,
        0.0,
        witness=f"t={worst.details['t']}",
        violations=violations,
        threshold=threshold,
    )


def _signed_power(x: float, s: float) -> float:
    return math.copysign(abs(x) ** s, x)


def gross_convexity_check(
    u: float, v: float, q: float, tolerance: float = 1e-12
) -> VerificationReport:
    """(4(q-1)/q²)(u^{q/2} - v^{q/2})² ≤ (u^{q-1} - v^{q-1})(u - v), odd powers on ℝ"""
    if q <= 1:
        raise DomainError(f"q must exceed 1, got {q}")
    rhs = (_signed_power(u, q - 1) - _signed_power(v, q - 1)) * (u - v)
    lhs = 4.0 * (q - 1) / q**2 * (_signed_power(u, q / 2) - _signed_power(v, q / 2)) ** 2
    return VerificationReport.compare(
        "gross_convexity", lhs, rhs, _scaled(tolerance, lhs, rhs), u=u, v=v, q=q
    )


def _require_nonnegative(f: CubeFunction) -> None:
    if np.any(f.values < 0):
        raise PreconditionError("function must be nonnegative")


def dirichlet_convexity_check(
    f: CubeFunction, q: float, tolerance: float = 1e-10
) -> VerificationReport:
    """(4(q-1)/q²) E(f^{q/2}, f^{q/2}) ≤ E(f^{q-1}, f) for f ≥ 0"""
    if q <= 1:
        raise DomainError(f"q must exceed 1, got {q}")
    _require_nonnegative(f)
    half = f.map(lambda x: x ** (q / 2))
    rhs = dirichlet_form(f.map(lambda x: x ** (q - 1)), f)
    lhs = 4.0 * (q - 1) / q**2 * dirichlet_form(half, half)
    return VerificationReport.compare(
        "dirichlet_convexity", lhs, rhs, _scaled(tolerance, lhs, rhs), q=q
    )


def gross_flow_check(
    f: CubeFunction, p_norm: float, times: Sequence[float], tolerance: float = 1e-10
) -> List[VerificationReport]:
    """t ↦ ‖P_t f‖_{q(t)} is non-increasing, q(t) = 1 + (p - 1) e^{4ρt}"""
    if p_norm <= 1:
        raise DomainError(f"p must exceed 1, got {p_norm}")
    _require_nonnegative(f)
    rho = f.cube.rho
    grid = sorted(set(float(t) for t in times))
    norms = [
        semigroup_apply(f, t).norm(1.0 + (p_norm - 1.0) * math.exp(4.0 * rho * t)) for t in grid
    ]
    return [
        VerificationReport.compare(
            "gross_flow",
            norms[k + 1],
            norms[k],
            _scaled(tolerance, norms[k]),
            t=grid[k + 1],
        )
        for k in range(len(grid) - 1)
    ]


def l2_decay_check(
    f: CubeFunction, times: Sequence[float], tolerance: float = 1e-10
) -> List[VerificationReport]:
    """‖P_t f₀‖₂ ≤ e^{-t} ‖f₀‖₂ for the centered f₀"""
    centered = f.centered()
    base = centered.norm(2.0)
    reports = []
    for t in times:
        lhs = semigroup_apply(centered, t).norm(2.0)
        rhs = math.exp(-t) * base
        reports.append(
            VerificationReport.compare("l2_decay", lhs, rhs, _scaled(tolerance, rhs), t=t)
        )
    return reports
