"""Entropy toolbox suite: tensorization, duality and the variational formula"""

from dataclasses import dataclass
from typing import List

import numpy as np

from ..core.report import VerificationReport
from ..core.run_config import RunConfig
from ..core.suite import SuiteInstance, SuiteMetadata, VerificationSuite
from ..measure import (
    FieldFunction,
    FiniteSpace,
    ProductSpace,
    TensorizationVariant,
    entropic_bound,
    entropy,
    entropy_duality_gap,
    tensorization_bound,
    variational_equality_check,
    variational_formula_check,
)

MAX_POINTS = 2**10


def random_product_function(rng: np.random.Generator, n: int, positive: bool) -> FieldFunction:
    """Random law on n factors of 2..4 points and a nonnegative function on the product"""
    factors = []
    points = 1
    for _ in range(n):
        size = int(rng.integers(2, 5))
        if points * size > MAX_POINTS:
            size = 2
        points *= size
        factors.append(FiniteSpace(tuple(range(size)), rng.dirichlet(np.ones(size))))
    space = ProductSpace(tuple(factors))
    values = np.exp(rng.normal(scale=1.5, size=space.cardinality))
    if not positive:
        values[rng.random(space.cardinality) < 0.2] = 0.0
        if not values.any():
            values[0] = 1.0
    return FieldFunction(space, values)


@dataclass(frozen=True)
class EntropyCase:
    f: FieldFunction
    g: FieldFunction  # test function for the entropic inequality


class EntropySuite(VerificationSuite):
    @property
    def metadata(self) -> SuiteMetadata:
        return SuiteMetadata(
            name="entropy",
            module="measure-core",
            description="Tensorization variants, entropy duality and the variational formula",
        )

    def build_instances(self, config: RunConfig) -> List[SuiteInstance]:
        instances = []
        for k in range(config.instances):
            rng = self.rng(config, k)
            n = config.n if config.n is not None else int(rng.integers(1, 6))
            # every third instance may vanish somewhere
            f = random_product_function(rng, min(n, 10), positive=k % 3 != 2)
            g = FieldFunction(f.space, rng.normal(size=f.space.cardinality))
            instances.append(SuiteInstance(self.instance_id(k), EntropyCase(f, g)))
        return instances

    def check(self, instance: SuiteInstance, config: RunConfig) -> List[VerificationReport]:
        case: EntropyCase = instance.payload
        f = case.f
        tol = self.tolerance(config, "tensorization", 1e-10)
        reports = [tensorization_bound(f, variant, tol) for variant in TensorizationVariant]

        mass = f.mean()
        reports.append(entropic_bound(f * (1.0 / mass), case.g))
        reports.append(
            variational_formula_check(f, [mass * s for s in (0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0)])
        )
        reports.extend(variational_equality_check(f, self.tolerance(config, "variational", 1e-10)))
        if np.all(f.values > 0):
            gap = entropy_duality_gap(f)
            reports.append(
                VerificationReport.compare(
                    "entropy_duality_gap",
                    abs(gap),
                    0.0,
                    self.tolerance(config, "entropy_duality_gap", 1e-9) * max(1.0, entropy(f)),
                )
            )
        return reports
