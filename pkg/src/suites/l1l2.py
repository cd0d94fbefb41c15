"""L¹-L² suite: the three variance bounds, the Δ_i bridge and KKL influences"""

from dataclasses import dataclass
from typing import List

import numpy as np

from ..core.report import VerificationReport
from ..core.run_config import RunConfig
from ..core.suite import SuiteInstance, SuiteMetadata, VerificationSuite
from ..cube import BiasedCube, CubeFunction
from ..influence import (
    coordinate_norms,
    delta_operator_bridge,
    dictator,
    kkl_check,
    l1l2_reports,
    majority,
    parity,
    random_monotone,
    tribes,
    variance_representation_check,
)

BIASES = (0.1, 0.25, 0.5, 0.75, 0.9)
INFLUENCE_DIMENSIONS = (3, 5, 7, 9)


@dataclass(frozen=True)
class InfluenceCase:
    """Named boolean masks on one symmetric cube"""

    cube: BiasedCube
    sets: tuple


def influence_case(n: int, rng: np.random.Generator) -> InfluenceCase:
    cube = BiasedCube(n, 0.5)
    sets = (
        ("dictator", dictator(cube)),
        ("parity", parity(cube)),
        ("majority", majority(cube)),
        ("tribes", tribes(cube, 2)),
        ("random_monotone", random_monotone(cube, rng)),
    )
    return InfluenceCase(cube, sets)


class L1L2Suite(VerificationSuite):
    @property
    def metadata(self) -> SuiteMetadata:
        return SuiteMetadata(
            name="l1l2",
            module="l1l2-influence",
            description="L1-L2 variance inequality and influence lower bounds",
        )

    def build_instances(self, config: RunConfig) -> List[SuiteInstance]:
        instances = []
        for k, n in enumerate(INFLUENCE_DIMENSIONS):
            instances.append(
                SuiteInstance(self.instance_id(k), influence_case(n, self.rng(config, k)))
            )
        for k in range(len(INFLUENCE_DIMENSIONS), config.instances):
            rng = self.rng(config, k)
            n = config.n if config.n is not None else int(rng.integers(1, 9))
            p = config.p if config.p is not None else float(rng.choice(BIASES))
            cube = BiasedCube(n, p)
            values = rng.normal(size=cube.size)
            if k % 4 == 0:
                # sparse functions have a large ‖·‖₂/‖·‖₁ ratio
                values[rng.random(cube.size) < 0.8] = 0.0
            instances.append(SuiteInstance(self.instance_id(k), CubeFunction(cube, values)))
        return instances

    def check(self, instance: SuiteInstance, config: RunConfig) -> List[VerificationReport]:
        if isinstance(instance.payload, InfluenceCase):
            case: InfluenceCase = instance.payload
            reports = []
            for label, mask in case.sets:
                for report in kkl_check(mask, case.cube):
                    labelled = f"{label} {report.witness}"
                    reports.append(report.model_copy(update={"witness": labelled}))
            return reports

        f: CubeFunction = instance.payload
        reports = l1l2_reports(f)
        reports.extend(delta_operator_bridge(f, i) for i in range(f.cube.n))
        reports.extend(
            variance_representation_check(
                f, self.tolerance(config, "variance_representation", 1e-8)
            )
        )
        norms = coordinate_norms(f)
        worst = int(np.argmax(norms.l1 - norms.l2))
        reports.append(
            VerificationReport.compare(
                "l1_below_l2",
                float(norms.l1[worst]),
                float(norms.l2[worst]),
                1e-12 * max(1.0, float(norms.l2[worst])),
                witness=f"i={worst}",
            )
        )
        return reports
