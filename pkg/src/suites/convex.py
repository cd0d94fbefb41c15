"""Convex distance suite: moment bounds, the dual identity and median concentration"""

from dataclasses import dataclass
from typing import List

import numpy as np

from ..core.report import VerificationReport
from ..core.run_config import RunConfig
from ..core.suite import SuiteInstance, SuiteMetadata, VerificationSuite
from ..convex import (
    CorollaryMode,
    DualMethod,
    PatternSet,
    bernoulli_norm_check,
    binary_cube,
    convex_distance,
    convex_distance_chain,
    convex_distance_moment,
    corollary_concentration,
    dual_distance,
    dual_identity_check,
    normalized_count,
    square_lipschitz_check,
)
from ..convex.inequalities import MOMENT_CONSTANTS
from ..measure import FiniteSpace, ProductSpace

MAX_COORDINATES = 8
SMALL_FACTORS = 6
SPHERE_PROBES = 4
COROLLARY_R = (0.0, 0.5, 1.0, 2.0, 3.0, 4.0)


@dataclass(frozen=True)
class CorollaryCase:
    certified_n: int
    solved_n: int
    vectors: np.ndarray


def random_pattern_set(rng: np.random.Generator, n: int, uniform: bool = False) -> PatternSet:
    """Random non-empty subset of uniform {0,1}^n, or of a random product law on n factors"""
    if uniform:
        base = binary_cube(n)
    else:
        factors = []
        for _ in range(n):
            size = int(rng.integers(2, 4)) if n <= SMALL_FACTORS else 2
            weights = rng.dirichlet(np.full(size, 2.0))
            factors.append(FiniteSpace(tuple(range(size)), weights))
        base = ProductSpace(tuple(factors))
    density = float(rng.uniform(0.02, 0.5))
    members = np.flatnonzero(rng.random(base.cardinality) < density)
    if members.size == 0:
        members = np.array([int(rng.integers(base.cardinality))])
    return PatternSet(base, tuple(int(m) for m in members))


class ConvexSuite(VerificationSuite):
    @property
    def metadata(self) -> SuiteMetadata:
        return SuiteMetadata(
            name="convex",
            module="convex-distance",
            description="Convex distance moments, dual representation and corollaries",
        )

    def build_instances(self, config: RunConfig) -> List[SuiteInstance]:
        rng = self.rng(config, 0)
        instances = [
            SuiteInstance(
                self.instance_id(0),
                CorollaryCase(certified_n=10, solved_n=4, vectors=rng.normal(size=(6, 3))),
            )
        ]
        for k in range(1, config.instances):
            rng = self.rng(config, k)
            n = config.n if config.n is not None else int(rng.integers(1, MAX_COORDINATES + 1))
            A = random_pattern_set(rng, min(n, MAX_COORDINATES), uniform=k % 2 == 0)
            instances.append(SuiteInstance(self.instance_id(k), A))
        return instances

    def check(self, instance: SuiteInstance, config: RunConfig) -> List[VerificationReport]:
        if isinstance(instance.payload, CorollaryCase):
            return self._corollaries(instance.payload)

        A: PatternSet = instance.payload
        tol = self.tolerance(config, "convex", 1e-10)
        d = convex_distance(A)
        reports = [convex_distance_moment(A, c, d, tol) for c in MOMENT_CONSTANTS]
        identity_tol = self.tolerance(config, "dual_distance_identity", 1e-8)
        reports.append(dual_identity_check(A, d, identity_tol))
        reports.append(square_lipschitz_check(A, d))
        reports.extend(convex_distance_chain(A, d, tolerance=tol))

        # the grid sup only ever underestimates F_A = d_A
        probes = np.unique(np.linspace(0, A.base.cardinality - 1, SPHERE_PROBES).astype(int))
        for x in probes:
            lower = dual_distance(A, int(x), DualMethod.SPHERE_GRID)
            reports.append(
                VerificationReport.compare(
                    "sphere_grid_lower_bound", lower, float(d[x]), 1e-9, witness=f"x={int(x)}"
                )
            )
        return reports

    def _corollaries(self, case: CorollaryCase) -> List[VerificationReport]:
        n = case.certified_n
        count = normalized_count(n)
        # a(x) = x / √n certifies the weighted Hamming hypothesis of the normalized count
        certificates = count.space.index_grid().astype(float) / np.sqrt(n)
        reports = corollary_concentration(
            count, CorollaryMode.WEIGHTED_HAMMING, COROLLARY_R, certificates=certificates
        )
        reports.extend(
            corollary_concentration(
                normalized_count(case.solved_n), CorollaryMode.WEIGHTED_HAMMING, COROLLARY_R
            )
        )
        reports.extend(bernoulli_norm_check(case.vectors, COROLLARY_R))
        return reports
