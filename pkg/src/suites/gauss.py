"""Gaussian suite: quadrature moments, LSI extremals, Herbst and OU checks"""

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.special import factorial2

from ..core.report import VerificationReport
from ..core.run_config import RunConfig
from ..core.suite import SuiteInstance, SuiteMetadata, VerificationSuite
from ..gauss import (
    SmoothTestFunction,
    fisher_information_check,
    gauss_hermite_rule,
    gaussian_concentration_check,
    gaussian_lsi_check,
    herbst_differential_check,
    herbst_mgf_check,
    ou_gradient_check,
    ou_hypercontractivity_check,
)
from ..gauss.functions import half_exponential, linear, random_lipschitz, random_positive_density
from ..gauss.inequalities import MIN_SAMPLES

MAX_MOMENT = 12
agree = VerificationReport.agreement

EXTREMAL_SLOPES = (0.5, 1.0, 2.0)
LAMBDA_GRID = tuple(np.linspace(-3.0, 3.0, 13))
CONCENTRATION_INSTANCES = 3
CONCENTRATION_R = (0.5, 1.0, 2.0, 3.0)


@dataclass(frozen=True)
class GaussCase:
    f: Optional[SmoothTestFunction]  # None for the fixed exactness instance
    density: Optional[SmoothTestFunction] = None
    concentration_seed: Optional[int] = None


def gaussian_moment(k: int) -> float:
    """E[X^k] for X ~ N(0, 1): (k - 1)!! for even k, 0 for odd"""
    if k % 2:
        return 0.0
    return float(factorial2(k - 1, exact=True)) if k else 1.0


class GaussSuite(VerificationSuite):
    def __init__(self) -> None:
        self.rule = gauss_hermite_rule()

    @property
    def metadata(self) -> SuiteMetadata:
        return SuiteMetadata(
            name="gauss",
            module="gauss-lab",
            description="Gaussian LSI, Herbst argument and Ornstein-Uhlenbeck smoothing",
        )

    def build_instances(self, config: RunConfig) -> List[SuiteInstance]:
        instances = [SuiteInstance(self.instance_id(0), GaussCase(None))]
        for k in range(1, config.instances):
            rng = self.rng(config, k)
            f = random_lipschitz(rng, lipschitz=1.0, terms=int(rng.integers(1, 6)))
            density = random_positive_density(rng, self.rule)
            seed = int(rng.integers(2**63)) if k <= CONCENTRATION_INSTANCES else None
            instances.append(SuiteInstance(self.instance_id(k), GaussCase(f, density, seed)))
        return instances

    def check(self, instance: SuiteInstance, config: RunConfig) -> List[VerificationReport]:
        case: GaussCase = instance.payload
        if case.f is None:
            return self._exactness(config)

        rule = self.rule
        tol = self.tolerance(config, "gauss", 1e-8)
        case.f.validate(rule)
        reports = [
            gaussian_lsi_check(case.f, rule, tol),
            fisher_information_check(case.density, rule, tol),
        ]
        reports.extend(herbst_mgf_check(case.f, LAMBDA_GRID, rule))
        reports.extend(herbst_differential_check(case.f, LAMBDA_GRID, rule, tol))
        for t in (0.1, 0.5, 2.0):
            reports.append(ou_gradient_check(case.f, t, rule))
        for p_norm, q_norm in ((2.0, 4.0), (1.5, 3.0)):
            t = 0.5 * math.log((q_norm - 1) / (p_norm - 1))
            reports.append(ou_hypercontractivity_check(case.f, p_norm, q_norm, t, rule, tol))

        if case.concentration_seed is not None:
            if config.samples < MIN_SAMPLES:
                reports.append(
                    VerificationReport.skip(
                        "gaussian_concentration", f"needs at least {MIN_SAMPLES} samples"
                    )
                )
            else:
                for two_sided in (False, True):
                    reports.extend(
                        gaussian_concentration_check(
                            case.f,
                            CONCENTRATION_R,
                            config.samples,
                            case.concentration_seed,
                            two_sided=two_sided,
                            rule=rule,
                        )
                    )
        return reports

    def _exactness(self, config: RunConfig) -> List[VerificationReport]:
        """Moments of the rule, LSI extremals and the Gaussian MGF, all equalities"""
        rule = self.rule
        tol = self.tolerance(config, "gauss_exact", 1e-10)
        reports = []
        for k in range(MAX_MOMENT + 1):
            exact = gaussian_moment(k)
            reports.append(agree("quadrature_moment", rule.moment(k), exact, tol, k=k))

        for b in EXTREMAL_SLOPES:
            f = half_exponential(b)
            lsi = gaussian_lsi_check(f, rule, tol)
            reports.append(lsi)
            reports.append(agree("gaussian_lsi_extremal", lsi.lhs, lsi.rhs, tol, b=b))

        slope = linear(1.0)
        for lam in (-2.0, -0.5, 0.5, 1.0, 2.0):
            mgf = rule.integrate(lambda x: np.exp(lam * slope(x)))
            reports.append(agree("gaussian_mgf", mgf, math.exp(lam**2 / 2), tol, lam=lam))
        reports.extend(herbst_mgf_check(slope, LAMBDA_GRID, rule))
        return reports
