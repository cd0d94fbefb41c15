"""Discrete probability measures on ℝᵈ and relative entropy"""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Union

import numpy as np
from loguru import logger
from scipy.special import xlogy

from ..core.errors import DomainError
from ..gauss.quadrature import QuadratureRule

MEASURE_HEADER = "# measure v1"
MASS_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Finitely supported probability measure: distinct points (m, d) and weights"""

    support: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        support = np.asarray(self.support, dtype=float)
        if support.ndim == 1:
            support = support[:, None]
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if support.ndim != 2 or support.shape[0] == 0:
            raise DomainError("a measure needs a non-empty (m, d) support")
        if weights.shape[0] != support.shape[0]:
            raise DomainError(f"{weights.shape[0]} weights for {support.shape[0]} points")
        if np.any(weights < 0) or np.any(~np.isfinite(weights)):
            raise DomainError("weights must be finite and nonnegative")
        if abs(weights.sum() - 1.0) > MASS_TOLERANCE:
            raise DomainError(f"weights sum to {weights.sum()!r}, not 1")
        if np.unique(support, axis=0).shape[0] != support.shape[0]:
            raise DomainError("support points must be distinct")
        weights = weights / weights.sum()
        support.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return int(self.support.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.support.shape[1])

    @classmethod
    def dirac(cls, point: Union[float, np.ndarray]) -> "DiscreteMeasure":
        return cls(np.atleast_1d(np.asarray(point, dtype=float))[None, :], np.ones(1))

    def reweight(
        self, density: Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]
    ) -> "DiscreteMeasure":
        """Multiply the weights by a positive density and renormalize"""
        values = np.asarray(
            density(self.support if self.dimension > 1 else self.support[:, 0])
            if callable(density)
            else density,
            dtype=float,
        ).reshape(-1)
        if values.shape[0] != self.size:
            raise DomainError(f"{values.shape[0]} density values for {self.size} points")
        if np.any(values <= 0) or np.any(~np.isfinite(values)):
            raise DomainError("density must be finite and strictly positive")
        tilted = self.weights * values
        return DiscreteMeasure(self.support, tilted / tilted.sum())

    def mean(self) -> np.ndarray:
        return self.weights @ self.support

    def to_text(self) -> str:
        lines = [MEASURE_HEADER, f"dim {self.dimension}"]
        for w, point in zip(self.weights, self.support):
            lines.append(" ".join(repr(float(v)) for v in (w, *point)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DiscreteMeasure":
        """
        Parse the measure file format.

        # measure v1
        dim <d>
        <weight> <x_1> ... <x_d>     (one line per support point)
        """
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if not lines or lines[0] != MEASURE_HEADER:
            raise DomainError(f"measure file must start with '{MEASURE_HEADER}'")
        if len(lines) < 2 or not lines[1].startswith("dim "):
            raise DomainError("missing 'dim <d>' line")
        dim = int(lines[1].split()[1])
        rows = [[float(v) for v in line.split()] for line in lines[2:]]
        if any(len(row) != dim + 1 for row in rows):
            raise DomainError(f"every point line needs a weight and {dim} coordinates")
        table = np.array(rows, dtype=float).reshape(-1, dim + 1)
        return cls(table[:, 1:], table[:, 0])

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path: Union[str, Path]) -> "DiscreteMeasure":
        return cls.from_text(Path(path).read_text())


def discretized_gaussian(rule: QuadratureRule, dim: int = 1) -> DiscreteMeasure:
    """γ_d on the tensor grid of a one-dimensional rule, d ∈ {1, 2}"""
    if dim not in (1, 2):
        raise DomainError(f"discretized Gaussians are built in dimension 1 or 2, got {dim}")
    if dim == 1:
        return DiscreteMeasure(rule.nodes[:, None], rule.weights)
    xs, ys = np.meshgrid(rule.nodes, rule.nodes, indexing="ij")
    support = np.column_stack([xs.reshape(-1), ys.reshape(-1)])
    return DiscreteMeasure(support, np.outer(rule.weights, rule.weights).reshape(-1))


def _alignment(mu: DiscreteMeasure, nu: DiscreteMeasure) -> np.ndarray:
    """Index into nu.support of every mu support point, -1 where absent"""
    if mu.dimension != nu.dimension:
        raise DomainError(f"dimension mismatch: {mu.dimension} vs {nu.dimension}")
    lookup = {tuple(point): j for j, point in enumerate(nu.support)}
    return np.array([lookup.get(tuple(point), -1) for point in mu.support])


def is_absolutely_continuous(mu: DiscreteMeasure, nu: DiscreteMeasure) -> bool:
    """μ ≪ ν: every point charged by μ is charged by ν"""
    index = _alignment(mu, nu)
    charged = mu.weights > 0
    if np.any(index[charged] < 0):
        return False
    return bool(np.all(nu.weights[index[charged]] > 0))


def relative_entropy(mu: DiscreteMeasure, nu: DiscreteMeasure) -> float:
    """
    H(μ|ν) = Σ μ_i log(μ_i/ν_i).

    Returns +inf (and logs a warning) when μ is not absolutely continuous w.r.t. ν.
    """
    if not is_absolutely_continuous(mu, nu):
        logger.warning("relative entropy: μ is not absolutely continuous w.r.t. ν, returning inf")
        return math.inf
    index = _alignment(mu, nu)
    charged = mu.weights > 0
    ratio = mu.weights[charged] / nu.weights[index[charged]]
    value = float(np.sum(xlogy(mu.weights[charged], ratio)))
    return max(value, 0.0)
