"""Influences of sets on the cube and the KKL consequences"""

import math
from dataclasses import dataclass
from typing import List

import numpy as np

from ..core.errors import DomainError, PreconditionError
from ..core.report import VerificationReport
from ..cube.biased_cube import BiasedCube
from .l1l2 import SYMMETRIC_K


@dataclass(frozen=True)
class InfluenceProfile:
    """I_i(A) = μ(x ∈ A; U_i(x) ∉ A) per coordinate"""

    influences: np.ndarray
    measure: float

    @property
    def total(self) -> float:
        return float(self.influences.sum())

    @property
    def maximum(self) -> float:
        return float(self.influences.max())

    @property
    def argmax(self) -> int:
        return int(np.argmax(self.influences))


def _as_mask(A: np.ndarray, cube: BiasedCube) -> np.ndarray:
    mask = np.asarray(A, dtype=bool).reshape(-1)
    if mask.size != cube.size:
        raise DomainError(f"set mask has {mask.size} entries for {cube.size} points")
    return mask


def influences(A: np.ndarray, cube: BiasedCube) -> InfluenceProfile:
    """Exact influences of A, given as a boolean mask over the cube points"""
    mask = _as_mask(A, cube).reshape(cube.shape)
    weights = cube.weight_tensor
    values = np.array(
        [float(np.sum(weights * (mask & ~np.flip(mask, axis=i)))) for i in range(cube.n)]
    )
    return InfluenceProfile(influences=values, measure=float(np.sum(weights * mask)))


def kkl_check(
    A: np.ndarray, cube: BiasedCube, K: float = SYMMETRIC_K, tolerance: float = 1e-12
) -> List[VerificationReport]:
    """
    α(1-α) ≤ 2K Σ I_i / log(e/√(2 I_i)), and max_i I_i ≥ α(1-α) log n / (8Kn).

    Raises:
        PreconditionError: p ≠ 1/2
        DomainError: μ(A) ∈ {0, 1}
    """
    if abs(cube.p - 0.5) > 1e-12:
        raise PreconditionError(f"influence bounds are stated at p = 1/2, got p = {cube.p}")
    profile = influences(A, cube)
    alpha = profile.measure
    if alpha <= 0.0 or alpha >= 1.0:
        raise DomainError(f"degenerate set: μ(A) = {alpha}")
    spread = alpha * (1.0 - alpha)
    positive = profile.influences[profile.influences > 0]
    summed = float(np.sum(positive / np.log(math.e / np.sqrt(2.0 * positive))))
    witness = f"n={cube.n} alpha={alpha:.6g}"
    return [
        VerificationReport.compare(
            "kkl_sum", spread, 2.0 * K * summed, tolerance, witness=witness, K=K
        ),
        VerificationReport.compare(
            "kkl_max_influence",
            spread * math.log(cube.n) / (8.0 * K * cube.n),
            profile.maximum,
            tolerance,
            witness=witness,
            coordinate=profile.argmax,
        ),
    ]


def dictator(cube: BiasedCube, i: int = 0) -> np.ndarray:
    return cube.points[:, i] == 1


def parity(cube: BiasedCube) -> np.ndarray:
    return np.prod(cube.points, axis=1) == 1


def majority(cube: BiasedCube) -> np.ndarray:
    if cube.n % 2 == 0:
        raise DomainError("majority needs an odd dimension")
    return cube.points.sum(axis=1) > 0


def tribes(cube: BiasedCube, width: int) -> np.ndarray:
    """OR over consecutive blocks of the AND of the block; a trailing short block counts too"""
    if width < 1:
        raise DomainError(f"tribe width must be positive, got {width}")
    positive = cube.points == 1
    blocks = [positive[:, k : k + width].all(axis=1) for k in range(0, cube.n, width)]
    return np.any(blocks, axis=0)


def random_monotone(cube: BiasedCube, rng: np.random.Generator, generators: int = 3) -> np.ndarray:
    """Union of up-sets of random points, each with at least one +1 coordinate"""
    mask = np.zeros(cube.size, dtype=bool)
    for _ in range(generators):
        required = rng.random(cube.n) < 0.5
        if not required.any():
            required[rng.integers(cube.n)] = True
        mask |= np.all(cube.points[:, required] == 1, axis=1)
    return mask
