"""Gaussian log-Sobolev, Herbst and concentration checks"""

import math
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger

from ..core.errors import DomainError, PreconditionError
from ..core.random import chunked_draws
from ..core.report import VerificationReport
from ..measure.functionals import entropy
from ..measure.spaces import FieldFunction
from .functions import SmoothTestFunction
from .ou import ou_apply
from .quadrature import QuadratureRule, gauss_hermite_rule

MIN_LSI_ORDER = 16
MIN_SAMPLES = 10_000
LIPSCHITZ_SLACK = 1e-12


def _scaled(tolerance: float, *values: float) -> float:
    return tolerance * max([1.0, *(abs(v) for v in values if math.isfinite(v))])


def _entropy_on_nodes(values: np.ndarray, rule: QuadratureRule) -> float:
    if not np.any(values > 0):
        return 0.0
    return entropy(FieldFunction(rule.as_space(), values))


def gaussian_lsi_check(
    f: SmoothTestFunction, rule: QuadratureRule, tolerance: float = 1e-8
) -> VerificationReport:
    """Ent_γ(f²) ≤ 2 ∫ f′² dγ by quadrature"""
    if rule.order < MIN_LSI_ORDER:
        raise PreconditionError(f"quadrature order {rule.order} < {MIN_LSI_ORDER}")
    values = f(rule.nodes)
    lhs = _entropy_on_nodes(values**2, rule)
    rhs = 2.0 * float(rule.weights @ f.grad(rule.nodes) ** 2)
    return VerificationReport.compare(
        "gaussian_lsi", lhs, rhs, _scaled(tolerance, lhs, rhs), function=f.name
    )


def fisher_information_check(
    f: SmoothTestFunction, rule: QuadratureRule, tolerance: float = 1e-8
) -> VerificationReport:
    """∫ f log f dγ ≤ (1/2) ∫ f′²/f dγ for a positive density (normalized here)"""
    values = f(rule.nodes)
    if np.any(values <= 0):
        raise DomainError(f"{f.name} is not strictly positive on the nodes")
    mass = float(rule.weights @ values)
    lhs = _entropy_on_nodes(values, rule) / mass
    rhs = 0.5 * float(rule.weights @ (f.grad(rule.nodes) ** 2 / values)) / mass
    return VerificationReport.compare(
        "gaussian_fisher_information", lhs, rhs, _scaled(tolerance, lhs, rhs), function=f.name
    )


def _require_one_lipschitz(f: SmoothTestFunction, rule: QuadratureRule) -> None:
    steepest = float(np.max(np.abs(f.grad(rule.nodes))))
    if f.lipschitz_bound > 1 + LIPSCHITZ_SLACK or steepest > 1 + LIPSCHITZ_SLACK:
        raise PreconditionError(
            f"{f.name} is not 1-Lipschitz on the nodes",
            witness=f"max|F'|={steepest} bound={f.lipschitz_bound}",
        )


def herbst_mgf_check(
    f: SmoothTestFunction,
    lambda_grid: Sequence[float],
    rule: QuadratureRule,
    tolerance: float = 1e-9,
) -> List[VerificationReport]:
    """∫ e^{λF} dγ ≤ exp(λ ∫F dγ + λ²/2) for each λ"""
    _require_one_lipschitz(f, rule)
    values = f(rule.nodes)
    mean = float(rule.weights @ values)
    reports = []
    for lam in lambda_grid:
        lhs = float(rule.weights @ np.exp(lam * values))
        rhs = math.exp(lam * mean + lam**2 / 2)
        reports.append(
            VerificationReport.compare(
                "herbst_mgf", lhs, rhs, _scaled(tolerance, rhs), lam=float(lam), function=f.name
            )
        )
    return reports


def herbst_differential_check(
    f: SmoothTestFunction,
    lambda_grid: Sequence[float],
    rule: QuadratureRule,
    tolerance: float = 1e-8,
) -> List[VerificationReport]:
    """λΛ′ - Λ log Λ ≤ (λ²/2) ∫ F′² e^{λF} dγ, i.e. the LSI applied to e^{λF/2}"""
    values = f(rule.nodes)
    slope_sq = f.grad(rule.nodes) ** 2
    reports = []
    for lam in lambda_grid:
        weights = np.exp(lam * values)
        lhs = _entropy_on_nodes(weights, rule)
        rhs = 0.5 * lam**2 * float(rule.weights @ (slope_sq * weights))
        reports.append(
            VerificationReport.compare(
                "herbst_differential", lhs, rhs, _scaled(tolerance, lhs, rhs), lam=float(lam)
            )
        )
    return reports


def gaussian_concentration_check(
    f: SmoothTestFunction,
    r_grid: Sequence[float],
    samples: int,
    seed: int,
    two_sided: bool = False,
    rule: Optional[QuadratureRule] = None,
) -> List[VerificationReport]:
    """
    γ(F ≥ ∫F + r) ≤ e^{-r²/2L²} against a seeded Monte Carlo tail.

    Passes when the empirical tail is within 3 binomial standard errors of the
    bound. two_sided uses γ(|F - ∫F| ≥ r) ≤ 2e^{-r²/2L²}.
    """
    if samples < MIN_SAMPLES:
        raise PreconditionError(f"{samples} samples < {MIN_SAMPLES}")
    lipschitz = f.lipschitz_bound
    if not math.isfinite(lipschitz):
        raise PreconditionError(f"{f.name} has no finite Lipschitz bound")
    rule = rule or gauss_hermite_rule()
    mean = rule.integrate(f)
    draws = chunked_draws(seed, 0, samples, lambda rng, n: rng.standard_normal(n))
    deviations = f(draws) - mean
    if two_sided:
        deviations = np.abs(deviations)
    logger.debug(f"concentration: {samples} draws for {f.name}, mean={mean:.6g}")

    reports = []
    for r in r_grid:
        if r < 0:
            raise DomainError(f"r must be nonnegative, got {r}")
        empirical = float(np.mean(deviations >= r))
        if lipschitz == 0:
            bound = 1.0 if r == 0 else 0.0
        else:
            bound = math.exp(-(r**2) / (2 * lipschitz**2))
        if two_sided:
            bound *= 2.0
        p = min(bound, 1.0)
        stderr = math.sqrt(p * (1 - p) / samples)
        reports.append(
            VerificationReport.compare(
                "gaussian_concentration_two_sided" if two_sided else "gaussian_concentration",
                empirical,
                bound,
                3.0 * stderr,
                r=float(r),
                samples=samples,
            )
        )
    return reports


def ou_hypercontractivity_check(
    f: SmoothTestFunction,
    p_norm: float,
    q_norm: float,
    t: float,
    rule: QuadratureRule,
    tolerance: float = 1e-8,
) -> VerificationReport:
    """‖P_t f‖_q ≤ ‖f‖_p in L^r(γ) once e^{2t} ≥ (q - 1)/(p - 1)"""
    if not 1.0 < p_norm < q_norm:
        raise DomainError(f"need 1 < p < q, got p={p_norm}, q={q_norm}")
    threshold = 0.5 * math.log((q_norm - 1) / (p_norm - 1))
    if t < threshold * (1 - 1e-12):
        raise PreconditionError(f"t = {t} is below the OU threshold {threshold}")
    smoothed = np.abs(ou_apply(f, t, rule))
    lhs = float(rule.weights @ smoothed**q_norm) ** (1 / q_norm)
    rhs = float(rule.weights @ np.abs(f(rule.nodes)) ** p_norm) ** (1 / p_norm)
    return VerificationReport.compare(
        "ou_hypercontractivity", lhs, rhs, _scaled(tolerance, lhs, rhs), t=t
    )
