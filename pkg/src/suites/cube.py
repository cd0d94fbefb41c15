"""Biased cube suite: Dirichlet forms, semigroup, LSI and hypercontractivity"""

from typing import List

import numpy as np

from ..core.report import VerificationReport
from ..core.run_config import RunConfig
from ..core.suite import SuiteInstance, SuiteMetadata, VerificationSuite
from ..cube import (
    BiasedCube,
    CubeFunction,
    DirichletRepresentation,
    dirichlet_convexity_check,
    dirichlet_form,
    gross_flow_check,
    hypercontractive_time,
    hypercontractivity_check,
    hypercontractivity_violation_probe,
    l2_decay_check,
    lsi_check,
    poincare_check,
    semigroup_apply,
    semigroup_series,
)

BIASES = (0.1, 0.3, 0.5, 0.7, 0.9)
NORM_PAIRS = ((2.0, 4.0), (1.5, 3.0), (4.0 / 3.0, 2.0))
SERIES_MAX_N = 3


class CubeSuite(VerificationSuite):
    @property
    def metadata(self) -> SuiteMetadata:
        return SuiteMetadata(
            name="cube",
            module="cube-dynamics",
            description="LSI, Poincaré and hypercontractivity on the biased cube",
        )

    def build_instances(self, config: RunConfig) -> List[SuiteInstance]:
        # instance 0 is the sub-threshold harness: f = 1 + x on the symmetric bit
        bit = BiasedCube(1, 0.5)
        instances = [
            SuiteInstance(self.instance_id(0), 1 + CubeFunction.coordinate(bit, 0))
        ]
        for k in range(1, config.instances):
            rng = self.rng(config, k)
            n = config.n if config.n is not None else int(rng.integers(1, 7))
            p = config.p if config.p is not None else float(rng.choice(BIASES))
            cube = BiasedCube(n, p)
            instances.append(
                SuiteInstance(self.instance_id(k), CubeFunction(cube, rng.normal(size=cube.size)))
            )
        return instances

    def check(self, instance: SuiteInstance, config: RunConfig) -> List[VerificationReport]:
        f: CubeFunction = instance.payload
        cube = f.cube
        tol = self.tolerance(config, "cube", 1e-10)
        if instance.instance_id == self.instance_id(0):
            threshold = hypercontractive_time(cube, 2.0, 4.0)
            return [
                hypercontractivity_violation_probe(
                    f, 2.0, 4.0, [0.0, threshold / 4, threshold / 2]
                ),
                hypercontractivity_check(f, 2.0, 4.0, threshold, tol),
            ]

        reports = [lsi_check(f, tol), poincare_check(f, tol)]
        forms = [dirichlet_form(f, f, r) for r in DirichletRepresentation]
        reports.append(
            VerificationReport.compare(
                "dirichlet_representations",
                max(forms) - min(forms),
                0.0,
                self.tolerance(config, "dirichlet_representations", 1e-11) * max(1.0, max(forms)),
            )
        )
        if cube.n <= SERIES_MAX_N:
            for t in (0.5, 2.0):
                exact, series = semigroup_apply(f, t), semigroup_series(f, t)
                gap = float(np.max(np.abs(exact.values - series.values)))
                reports.append(
                    VerificationReport.compare("semigroup_series", gap, 0.0, 1e-9, t=t)
                )
        for p_norm, q_norm in NORM_PAIRS:
            t = hypercontractive_time(cube, p_norm, q_norm)
            reports.append(hypercontractivity_check(f, p_norm, q_norm, t, tol))
            reports.append(hypercontractivity_check(f, p_norm, q_norm, 2 * t, tol))
        magnitude = f.map(np.abs)
        reports.extend(gross_flow_check(magnitude, 2.0, [0.0, 0.1, 0.3, 0.7, 1.5], tol))
        reports.extend(l2_decay_check(f, [0.1, 0.5, 1.0, 3.0], tol))
        reports.append(dirichlet_convexity_check(magnitude, 3.0, tol))
        return reports
