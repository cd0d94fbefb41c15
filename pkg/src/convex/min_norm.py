"""
Wolfe's minimum-norm-point algorithm over an explicit vertex list.

Finds the point of conv(V) closest to the origin together with convex weights
and the certificate ⟨z, v - z⟩ ≥ 0 for every vertex v.
"""

from dataclasses import dataclass, field
from typing import List

import numpy as np
from loguru import logger

from ..core.errors import SolverError
from .patterns import HullInstance

PIVOT = 1e-12
CERTIFICATE_SLACK = 1e-8
MAX_MAJOR_CYCLES = 10_000


@dataclass(frozen=True, eq=False)
class MinNormResult:
    point: np.ndarray = field(repr=False)
    distance: float
    coefficients: np.ndarray = field(repr=False)  # one weight per hull vertex
    major_cycles: int = 0

    def certificate_gap(self, hull: HullInstance) -> float:
        """min over vertices of ⟨z, v - z⟩; optimal iff ≥ 0"""
        return float(np.min(hull.vertices @ self.point) - self.point @ self.point)


def _affine_minimizer(points: np.ndarray) -> np.ndarray:
    """Weights α, Σα = 1, minimizing ‖αᵀ points‖ over the affine hull"""
    k = points.shape[0]
    if k == 1:
        return np.ones(1)
    system = np.zeros((k + 1, k + 1))
    system[:k, :k] = points @ points.T
    system[:k, k] = 1.0
    system[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    solution = np.linalg.lstsq(system, rhs, rcond=None)[0]
    return solution[:k]


def min_norm_point(hull: HullInstance) -> MinNormResult:
    """
    Minimum-norm point of conv(hull.vertices).

    Raises:
        SolverError: if the iteration cap is hit or the certificate fails
    """
    vertices = hull.vertices
    scale = max(1.0, float(np.max(np.sum(vertices**2, axis=1))))
    corral: List[int] = [int(np.argmin(np.sum(vertices**2, axis=1)))]
    weights = np.ones(1)
    z = vertices[corral[0]].copy()

    cycles = 0
    while True:
        cycles += 1
        if cycles > MAX_MAJOR_CYCLES:
            raise SolverError(f"min-norm point did not converge in {MAX_MAJOR_CYCLES} cycles")
        dots = vertices @ z
        j = int(np.argmin(dots))
        if z @ z - dots[j] <= PIVOT * scale or j in corral:
            break
        corral.append(j)
        weights = np.append(weights, 0.0)

        # minor cycles: move toward the affine minimizer, dropping vertices that hit 0
        while True:
            alpha = _affine_minimizer(vertices[corral])
            if np.all(alpha > PIVOT):
                weights = alpha
                break
            blocking = (alpha <= PIVOT) & (weights - alpha > 0)
            if blocking.any():
                theta = float(np.min(weights[blocking] / (weights[blocking] - alpha[blocking])))
            else:
                theta = 0.0
            theta = min(max(theta, 0.0), 1.0)
            weights = theta * alpha + (1.0 - theta) * weights
            keep = weights > PIVOT
            if keep.all():
                keep[int(np.argmin(weights))] = False
            corral = [c for c, k in zip(corral, keep) if k]
            weights = weights[keep] / weights[keep].sum()
        previous = float(z @ z)
        z = weights @ vertices[corral]
        if float(z @ z) > previous - PIVOT**2 * scale:
            # no strict decrease left: numerical stall at the optimum
            break

    coefficients = np.zeros(vertices.shape[0])
    coefficients[corral] = weights
    result = MinNormResult(
        point=z, distance=float(np.sqrt(z @ z)), coefficients=coefficients, major_cycles=cycles
    )
    gap = result.certificate_gap(hull)
    if gap < -CERTIFICATE_SLACK:
        logger.error(f"✗ min-norm certificate failed: gap={gap:.3e}")
        raise SolverError(f"min-norm point certificate violated (gap {gap:.3e})")
    logger.debug(f"min-norm point: distance={result.distance:.6g} cycles={cycles}")
    return result
