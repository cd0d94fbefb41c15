"""Empirical-process suite: Poisson, Bernstein and Talagrand tails of suprema"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List

import numpy as np

from ..core.report import VerificationReport
from ..core.run_config import RunConfig
from ..core.suite import SuiteInstance, SuiteMetadata, VerificationSuite
from ..empirical import (
    MAX_EXACT_POINTS,
    LawMode,
    ProcessInstance,
    SupStatistics,
    bernstein_tail_check,
    poisson_mgf_check,
    poisson_tail_check,
    random_instance,
    sign_instance,
    supremum_law,
    symmetrization_v_bound,
    talagrand_tail_check,
    truncation_tail_check,
)
from ..empirical.process import TAIL_SLACK
from ..measure import FiniteSpace

LAMBDA_GRID = (0.0, 0.25, 0.5, 1.0, 2.0, 4.0)
RADII = (0.5, 1.0, 2.0, 4.0)
MC_ONLY_N = 24
MC_SIGMAS = 4.0


class FamilyKind(str, Enum):
    NONNEGATIVE = "nonnegative"
    SYMMETRIC = "symmetric"
    SIGNED = "signed"


@dataclass(frozen=True)
class ProcessCase:
    inst: ProcessInstance
    kind: FamilyKind
    seed: int
    compare_exact: bool = False


def binomial_instance(n: int) -> ProcessInstance:
    """Z = number of heads in n fair coins"""
    space = FiniteSpace.uniform((0, 1))
    return ProcessInstance((space,) * n, (np.array([[0.0, 1.0]]),) * n)


class EmpiricalSuite(VerificationSuite):
    @property
    def metadata(self) -> SuiteMetadata:
        return SuiteMetadata(
            name="empirical",
            module="empirical-sup",
            description="Concentration of suprema of empirical processes",
        )

    def build_instances(self, config: RunConfig) -> List[SuiteInstance]:
        instances = [SuiteInstance(self.instance_id(0), None)]
        kinds = list(FamilyKind)
        for k in range(1, config.instances):
            rng = self.rng(config, k)
            kind = kinds[k % len(kinds)]
            if k == 2 and config.n is None:
                n = MC_ONLY_N
            else:
                n = config.n if config.n is not None else int(rng.integers(1, 11))
            N = config.N if config.N is not None else int(rng.integers(1, 9))
            inst = random_instance(
                rng,
                n,
                max(N, 2) if kind is FamilyKind.SYMMETRIC else N,
                space_size=int(rng.integers(2, 4)),
                nonnegative=kind is FamilyKind.NONNEGATIVE,
                symmetric=kind is FamilyKind.SYMMETRIC,
            )
            case = ProcessCase(inst, kind, int(rng.integers(2**63)), compare_exact=k == 1)
            instances.append(SuiteInstance(self.instance_id(k), case))
        return instances

    def check(self, instance: SuiteInstance, config: RunConfig) -> List[VerificationReport]:
        if instance.payload is None:
            return self._fixed()

        case: ProcessCase = instance.payload
        inst = case.inst
        exact = inst.cardinality <= MAX_EXACT_POINTS
        if exact:
            stats = supremum_law(inst)
        else:
            stats = supremum_law(inst, LawMode.MONTE_CARLO, config.samples, case.seed)
        radii = [c * inst.scale for c in RADII]

        reports = bernstein_tail_check(inst, radii, stats)
        reports.extend(talagrand_tail_check(inst, radii, stats))
        if case.kind is FamilyKind.NONNEGATIVE:
            reports.extend(poisson_mgf_check(inst, LAMBDA_GRID, stats))
            reports.extend(poisson_tail_check(inst, radii, stats))
            if exact:
                squared = inst.squared()
                reports.extend(
                    report.model_copy(update={"name": "poisson_mgf_squared"})
                    for report in poisson_mgf_check(squared, LAMBDA_GRID)
                )
        if case.kind is FamilyKind.SYMMETRIC and exact:
            reports.append(symmetrization_v_bound(inst, stats))
        if exact:
            reports.extend(truncation_tail_check(inst, radii))
        if case.compare_exact and exact:
            reports.extend(self._monte_carlo_agreement(inst, stats, config, case.seed))
        return reports

    def _monte_carlo_agreement(
        self, inst: ProcessInstance, stats: SupStatistics, config: RunConfig, seed: int
    ) -> List[VerificationReport]:
        """Seeded Monte Carlo mean and tails against the enumerated law"""
        sampled = supremum_law(inst, LawMode.MONTE_CARLO, config.samples, seed)
        spread = float(np.sqrt(stats.weights @ (stats.z - stats.mean_z) ** 2))
        rounding = 1e-9 * max(1.0, abs(stats.mean_z))
        reports = [
            VerificationReport.compare(
                "monte_carlo_mean",
                abs(sampled.mean_z - stats.mean_z),
                0.0,
                MC_SIGMAS * spread / math.sqrt(config.samples) + rounding,
                samples=config.samples,
            )
        ]
        for r in RADII:
            # both tails measured from the exact mean
            exact_tail = stats.upper_tail(r)
            sampled_tail = float(np.mean(sampled.z >= stats.mean_z + r - TAIL_SLACK))
            reports.append(
                VerificationReport.compare(
                    "monte_carlo_tail",
                    abs(sampled_tail - exact_tail),
                    0.0,
                    MC_SIGMAS * (sampled.standard_error(exact_tail) + 1.0 / config.samples),
                    r=r,
                )
            )
        return reports

    def _fixed(self) -> List[VerificationReport]:
        """Coins with closed-form laws"""
        coins = sign_instance(2, symmetric=True)
        law = supremum_law(coins)
        reports = [
            VerificationReport.agreement("sign_variance_proxy", law.v, 2.0, 1e-12),
            VerificationReport.agreement("sign_mean", law.mean_z, 1.0, 1e-12),
            symmetrization_v_bound(coins, law),
        ]
        binomial = binomial_instance(3)
        reports.extend(poisson_tail_check(binomial, [1.5]))
        reports.extend(poisson_mgf_check(binomial, LAMBDA_GRID))
        reports.extend(bernstein_tail_check(sign_instance(4), RADII))
        return reports
