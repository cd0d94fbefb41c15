"""Convex distance d_A and its dual weighted-Hamming form F_A"""

from enum import Enum
from typing import Dict

import numpy as np
from loguru import logger
from scipy.stats import norm, qmc

from ..core.errors import SizeLimitError
from .min_norm import MinNormResult, min_norm_point
from .patterns import HullInstance, PatternSet, build_hull

MAX_ENUMERATION_POINTS = 2**14
SPHERE_GRID_SIZE = 10_000


class DualMethod(str, Enum):
    CERTIFICATE = "certificate"
    SPHERE_GRID = "sphere_grid"


def _check_enumerable(A: PatternSet) -> None:
    if A.base.cardinality > MAX_ENUMERATION_POINTS:
        raise SizeLimitError(
            f"{A.base.cardinality} points exceed the enumeration cap {MAX_ENUMERATION_POINTS}"
        )


def convex_distance(A: PatternSet) -> np.ndarray:
    """d_A(x) for every point x of the base space, in enumeration order"""
    _check_enumerable(A)
    grid = A.base.index_grid()
    members = A.member_grid
    cache: Dict[bytes, float] = {}
    distances = np.empty(A.base.cardinality)
    for x, point in enumerate(grid):
        hull = HullInstance((members != point).astype(float))
        key = hull.vertices.tobytes()
        if key not in cache:
            cache[key] = min_norm_point(hull).distance
        distances[x] = cache[key]
    logger.debug(f"convex distance: {len(cache)} distinct hulls over {len(grid)} points")
    return distances


def sphere_grid(n: int, size: int = SPHERE_GRID_SIZE) -> np.ndarray:
    """
    Fixed unit vectors in the nonnegative orthant of S^{n-1}.

    Unscrambled Halton points pushed through the normal quantile and folded to the
    orthant; seedless, so every run sees the same grid. Draws that land on the
    origin are dropped; on a line the orthant is the single point 1.
    """
    if n == 1:
        return np.ones((1, 1))
    uniforms = qmc.Halton(d=n, scramble=False).random(size + 1)[1:]
    directions = np.abs(norm.ppf(uniforms))
    lengths = np.linalg.norm(directions, axis=1, keepdims=True)
    keep = lengths[:, 0] > 0.0
    return directions[keep] / lengths[keep]


def weighted_hamming_to_set(hull: HullInstance, a: np.ndarray) -> float:
    """d_a(x, A) = min over y ∈ A of Σ a_i 1{x_i ≠ y_i}"""
    return float(np.min(hull.vertices @ a))


def dual_distance(
    A: PatternSet,
    x: int,
    method: DualMethod | str = DualMethod.CERTIFICATE,
    result: MinNormResult | None = None,
) -> float:
    """
    F_A(x) = sup over unit a ≥ 0 of d_a(x, A).

    certificate evaluates d_a at a = z/‖z‖ from the min-norm point z, which attains
    the sup; sphere_grid takes the max over a fixed grid and only lower-bounds F_A.
    """
    hull = build_hull(A, x)
    if DualMethod(method) is DualMethod.SPHERE_GRID:
        return float(np.max(np.min(sphere_grid(hull.dimension) @ hull.vertices.T, axis=1)))
    result = result or min_norm_point(hull)
    if result.distance <= 0.0:
        return 0.0
    return weighted_hamming_to_set(hull, result.point / result.distance)
