"""Transport suite: certified W₂, Kantorovich duality and the T2 inequality"""

import math
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from ..core.report import VerificationReport
from ..core.run_config import RunConfig
from ..core.suite import SuiteInstance, SuiteMetadata, VerificationSuite
from ..gauss import uniform_gaussian_rule
from ..transport import (
    DiscreteMeasure,
    discretized_gaussian,
    gauss_hermite_refinement,
    gaussian_tilt_density,
    hamilton_jacobi_residual,
    hopf_lax,
    hopf_lax_exponential_check,
    kantorovich_duality_check,
    linprog_cost,
    quantile_cost,
    random_lipschitz_density,
    shift_density,
    shift_family,
    t2_check,
    w2,
)

agree = VerificationReport.agreement

SHIFTS = (0.25, 0.5, 1.0)
QUADRATIC_WEIGHTS = (0.5, 1.0, 2.0)
MAX_ATOMS = 12


@dataclass(frozen=True)
class TransportCase:
    mu: DiscreteMeasure
    nu: DiscreteMeasure
    xi: DiscreteMeasure
    density: Callable[[np.ndarray], np.ndarray]


def random_measure(rng: np.random.Generator, size: int, dim: int) -> DiscreteMeasure:
    return DiscreteMeasure(rng.normal(scale=1.5, size=(size, dim)), rng.dirichlet(np.ones(size)))


class TransportSuite(VerificationSuite):
    @property
    def metadata(self) -> SuiteMetadata:
        return SuiteMetadata(
            name="transport",
            module="transport",
            description="Quadratic Kantorovich distance, duality and Gaussian T2",
        )

    def build_instances(self, config: RunConfig) -> List[SuiteInstance]:
        instances = [SuiteInstance(self.instance_id(0), None)]
        for k in range(1, config.instances):
            rng = self.rng(config, k)
            dim = min(config.n, 2) if config.n is not None else int(rng.integers(1, 3))
            mu = random_measure(rng, int(rng.integers(1, MAX_ATOMS + 1)), dim)
            nu = random_measure(rng, int(rng.integers(1, MAX_ATOMS + 1)), dim)
            xi = random_measure(rng, int(rng.integers(1, MAX_ATOMS + 1)), dim)
            case = TransportCase(mu, nu, xi, random_lipschitz_density(rng))
            instances.append(SuiteInstance(self.instance_id(k), case))
        return instances

    def check(self, instance: SuiteInstance, config: RunConfig) -> List[VerificationReport]:
        if instance.payload is None:
            return self._fixed(config)

        case: TransportCase = instance.payload
        tol = self.tolerance(config, "transport", 1e-8)
        solution = w2(case.mu, case.nu)
        cost = solution.plan.cost
        reports = [
            agree("w2_linprog_agreement", cost, linprog_cost(case.mu, case.nu), tol),
            agree("w2_symmetry", solution.distance, w2(case.nu, case.mu).distance, tol),
            kantorovich_duality_check(case.mu, case.nu, solution),
        ]
        via = w2(case.mu, case.xi).distance + w2(case.xi, case.nu).distance
        reports.append(VerificationReport.compare("w2_triangle", solution.distance, via, tol))
        if case.mu.dimension == 1:
            quantile = quantile_cost(case.mu, case.nu)
            reports.append(agree("w2_quantile_agreement", cost, quantile, tol))
        reports.extend(gauss_hermite_refinement(case.density, "log-lipschitz"))
        return reports

    def _fixed(self, config: RunConfig) -> List[VerificationReport]:
        """
        Closed-form distances, the shift family and the Hopf-Lax semigroup.

        Shifts gate on aligned lattices and are tracked on Gauss–Hermite rules.
        """
        reports = [
            agree(
                "w2_dirac",
                w2(DiscreteMeasure.dirac(0.0), DiscreteMeasure.dirac(2.0)).distance,
                2.0,
                1e-12,
            ),
            agree(
                "w2_dirac",
                w2(DiscreteMeasure.dirac([0.0, 0.0]), DiscreteMeasure.dirac([1.0, 1.0])).distance,
                math.sqrt(2.0),
                1e-12,
            ),
        ]
        for b in SHIFTS:
            reports.extend(shift_family(b))
            reports.extend(gauss_hermite_refinement(shift_density(b), f"shift b={b}"))

        plane = discretized_gaussian(uniform_gaussian_rule(spacing=0.5, half_width=3.5), dim=2)
        reports.append(t2_check(gaussian_tilt_density(0.0, 0.6), plane))

        grid = np.linspace(-4.0, 4.0, 801)
        inside = np.abs(grid) <= 2.0
        settled = hopf_lax(grid**2 / 2, 1.0, grid)
        reports.append(
            VerificationReport.compare(
                "hopf_lax_quadratic",
                float(np.max(np.abs(settled - grid**2 / 4)[inside])),
                0.0,
                1e-4,
            )
        )
        residual = hamilton_jacobi_residual(lambda y: y**2 / 2, grid, 1.0)
        reports.append(
            VerificationReport.compare(
                "hamilton_jacobi_residual", residual, 0.1, 0.0, diagnostic=True
            )
        )
        fine = uniform_gaussian_rule(spacing=0.05, half_width=8.0)
        for c in QUADRATIC_WEIGHTS:
            reports.append(hopf_lax_exponential_check(lambda y, c=c: c * y**2 / 2, fine))
        return reports
