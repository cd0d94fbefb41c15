"""Poisson, Bernstein and Talagrand tail bounds for suprema of empirical processes"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ..core.errors import DomainError, PreconditionError
from ..core.report import VerificationReport
from .process import LawMode, ProcessInstance, SupStatistics, supremum_law

TALAGRAND_PREFACTOR = 3.0
TALAGRAND_CONSTANT = 300.0
MC_SIGMAS = 4.0


def _law(inst: ProcessInstance, stats: Optional[SupStatistics]) -> SupStatistics:
    return stats if stats is not None else supremum_law(inst, LawMode.EXACT)


def _require_nonnegative(inst: ProcessInstance) -> None:
    if not inst.is_nonnegative():
        worst = min(float(t.min()) for t in inst.tables)
        raise PreconditionError(
            "the Poisson bounds need 0 ≤ g ≤ 1", witness=f"min g = {worst!r}"
        )


def _tail_report(
    name: str,
    stats: SupStatistics,
    empirical: float,
    bound: float,
    inst: ProcessInstance,
    r: float,
) -> VerificationReport:
    """Exact laws get a 1e-12 slack; Monte Carlo laws get MC_SIGMAS standard errors"""
    tolerance = 1e-12 + MC_SIGMAS * stats.standard_error(min(bound, 1.0))
    return VerificationReport.compare(
        name,
        empirical,
        bound,
        tolerance,
        witness=f"n={inst.n} N={inst.N}",
        r=r,
        scale=inst.scale,
        statistical=stats.statistical,
    )


def poisson_h(u: float) -> float:
    """h(u) = (1 + u) log(1 + u) - u"""
    return (1.0 + u) * math.log1p(u) - u


def poisson_mgf_check(
    inst: ProcessInstance,
    lambda_grid: Sequence[float],
    stats: Optional[SupStatistics] = None,
) -> List[VerificationReport]:
    """E(e^{λZ}) ≤ exp(E(Z)(e^λ - 1)) for 0 ≤ g ≤ 1, λ ≥ 0"""
    _require_nonnegative(inst)
    stats = _law(inst, stats)
    mean = stats.mean_z
    reports = []
    for lam in lambda_grid:
        if lam < 0:
            raise DomainError(f"λ must be nonnegative, got {lam}")
        values = np.exp(lam * stats.z)
        lhs = float(stats.weights @ values)
        rhs = math.exp(mean * math.expm1(lam))
        tolerance = 1e-10 * max(1.0, rhs)
        if stats.statistical:
            spread = float(np.std(values)) / math.sqrt(stats.samples or 1)
            tolerance += MC_SIGMAS * spread
        reports.append(
            VerificationReport.compare(
                "poisson_mgf",
                lhs,
                rhs,
                tolerance,
                witness=f"n={inst.n} N={inst.N}",
                lam=float(lam),
                statistical=stats.statistical,
            )
        )
    return reports


def poisson_tail_check(
    inst: ProcessInstance, r_grid: Sequence[float], stats: Optional[SupStatistics] = None
) -> List[VerificationReport]:
    """P(Z ≥ E(Z) + r) ≤ exp(-E(Z) h(r/E(Z))); skipped when E(Z) = 0"""
    _require_nonnegative(inst)
    stats = _law(inst, stats)
    mean = stats.mean_z
    if mean <= 1e-15:
        return [
            VerificationReport.skip("poisson_tail", "E(Z) = 0: the Poisson bound degenerates")
        ]
    reports = []
    for r in r_grid:
        r_unit = float(r) / inst.scale
        bound = math.exp(-mean * poisson_h(r_unit / mean))
        reports.append(
            _tail_report("poisson_tail", stats, stats.upper_tail(r_unit), bound, inst, float(r))
        )
    return reports


def bernstein_bound(r: float, v: float) -> float:
    """2 exp(-min(r/16, r²/(80V))), with r²/(80V) read as +∞ when V = 0"""
    if r == 0:
        return 2.0
    quadratic = math.inf if v <= 0 else r**2 / (80.0 * v)
    return 2.0 * math.exp(-min(r / 16.0, quadratic))


def talagrand_bound(r: float, v: float) -> float:
    """3 exp(-(r/300) log(1 + r/V)), 0 for r > 0 when V = 0"""
    if r == 0:
        return TALAGRAND_PREFACTOR
    if v <= 0:
        return 0.0
    return TALAGRAND_PREFACTOR * math.exp(-(r / TALAGRAND_CONSTANT) * math.log1p(r / v))


def bernstein_tail_check(
    inst: ProcessInstance, r_grid: Sequence[float], stats: Optional[SupStatistics] = None
) -> List[VerificationReport]:
    """P(|Z - E(Z)| ≥ r) ≤ 2 exp(-min(r/16, r²/(80V)))"""
    stats = _law(inst, stats)
    v = stats.v
    reports = []
    for r in r_grid:
        r_unit = float(r) / inst.scale
        reports.append(
            _tail_report(
                "bernstein_tail",
                stats,
                stats.tail(r_unit),
                bernstein_bound(r_unit, v),
                inst,
                float(r),
            )
        )
    return reports


def talagrand_tail_check(
    inst: ProcessInstance, r_grid: Sequence[float], stats: Optional[SupStatistics] = None
) -> List[VerificationReport]:
    """P(|Z - E(Z)| ≥ r) ≤ 3 exp(-(r/300) log(1 + r/V)) with U = 1"""
    stats = _law(inst, stats)
    v = stats.v
    reports = []
    for r in r_grid:
        r_unit = float(r) / inst.scale
        reports.append(
            _tail_report(
                "talagrand_tail",
                stats,
                stats.tail(r_unit),
                talagrand_bound(r_unit, v),
                inst,
                float(r),
            )
        )
    return reports


@dataclass(frozen=True)
class TruncationPair:
    """Laws of Z, Z_τ¹ (small values kept) and Z_τ² (absolute large values)"""

    tau: float
    z: SupStatistics
    z1: SupStatistics
    z2: SupStatistics

    def pointwise_gap(self) -> float:
        """max of |Z - Z_τ¹| - Z_τ², nonpositive"""
        return float(np.max(np.abs(self.z.z - self.z1.z) - self.z2.z))


def truncation_split(inst: ProcessInstance, tau: float) -> TruncationPair:
    if tau <= 0:
        raise DomainError(f"truncation level must be positive, got {tau}")
    small = inst.map(lambda t: np.where(np.abs(t) <= tau, t, 0.0))
    large = inst.map(lambda t: np.where(np.abs(t) > tau, np.abs(t), 0.0))
    return TruncationPair(
        tau=tau,
        z=supremum_law(inst),
        z1=supremum_law(small),
        z2=supremum_law(large),
    )


def balanced_truncation_level(v: float, r: float) -> float:
    """τ = √(4V/(5r))"""
    if r <= 0 or v <= 0:
        raise DomainError("the balanced level needs V > 0 and r > 0")
    return math.sqrt(4.0 * v / (5.0 * r))


def truncation_tail_check(
    inst: ProcessInstance, r_grid: Sequence[float], tau: Optional[float] = None
) -> List[VerificationReport]:
    """
    P(|Z - EZ| ≥ 4r) ≤ P(|Z¹ - EZ¹| ≥ r) + P(Z² ≥ EZ² + r) for r ≥ E(Z²), exactly.

    r is in the units of the family before normalization, like the other tail checks.
    With tau unset, each r uses the balanced level √(4V/(5r)).
    """
    v = supremum_law(inst).v
    reports = []
    for r in r_grid:
        r = float(r) / inst.scale
        if r <= 0 or (tau is None and v <= 0):
            reports.append(VerificationReport.skip("truncation_tail", "needs r > 0 and V > 0", r=r))
            continue
        level = tau if tau is not None else balanced_truncation_level(v, r)
        pair = truncation_split(inst, level)
        reports.append(
            VerificationReport.compare(
                "truncation_pointwise", pair.pointwise_gap(), 0.0, 1e-12, tau=level
            )
        )
        if r < pair.z2.mean_z:
            reports.append(
                VerificationReport.skip("truncation_tail", "r below E(Z²)", r=r, tau=level)
            )
            continue
        rhs = pair.z1.tail(r) + pair.z2.upper_tail(r)
        reports.append(
            VerificationReport.compare(
                "truncation_tail", pair.z.tail(4 * r), rhs, 1e-12, r=r, tau=level
            )
        )
    return reports


def symmetrization_v_bound(
    inst: ProcessInstance, stats: Optional[SupStatistics] = None
) -> VerificationReport:
    """
    V ≤ E(Z) + 8 max_k Σ_i E(g_k(X_i)²) for a centered family closed under negation.

    Raises:
        PreconditionError: the family is not centered or not symmetric
    """
    if not inst.is_centered():
        raise PreconditionError("symmetrization needs E(g_k(X_i)) = 0 for every i, k")
    if not inst.is_symmetric():
        raise PreconditionError("symmetrization needs a family closed under negation")
    stats = _law(inst, stats)
    variances = sum(t**2 @ space.weights for space, t in zip(inst.spaces, inst.tables))
    sigma2 = float(np.max(variances))
    return VerificationReport.compare(
        "symmetrization_v",
        stats.v,
        stats.mean_z + 8.0 * sigma2,
        1e-12 * max(1.0, stats.v),
        witness=f"n={inst.n} N={inst.N}",
        sigma2=sigma2,
        scale=inst.scale,
    )
