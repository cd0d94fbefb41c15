"""
Quadrature rules for the standard Gaussian measure γ.

Rules integrate against γ directly: Σ w_k f(x_k) ≈ ∫ f dγ with Σ w_k = 1.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from loguru import logger
from scipy.linalg import eigh_tridiagonal
from scipy.stats import norm

from ..core.errors import DomainError
from ..measure.spaces import FiniteSpace

DEFAULT_ORDER = 64


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and positive weights for γ, nodes ascending"""

    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    kind: str = "gauss_hermite"

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size == 0:
            raise DomainError("nodes and weights must be matching non-empty 1-D arrays")
        if np.any(weights < 0):
            raise DomainError("quadrature weights must be nonnegative")
        weights = weights / weights.sum()
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def order(self) -> int:
        return int(self.nodes.size)

    def integrate(self, fn: Callable[[np.ndarray], np.ndarray]) -> float:
        return float(self.weights @ fn(self.nodes))

    def moment(self, k: int) -> float:
        return float(self.weights @ self.nodes**k)

    def as_space(self) -> FiniteSpace:
        """The discretized γ as a finite probability space labelled by node values"""
        return FiniteSpace(tuple(float(x) for x in self.nodes), self.weights)


def gauss_hermite_rule(order: int = DEFAULT_ORDER) -> QuadratureRule:
    """
    Gauss–Hermite rule for the probabilists' weight by Golub–Welsch.

    The Jacobi matrix of the monic probabilists' Hermite polynomials has zero
    diagonal and off-diagonal √k; its eigenvalues are the nodes and the squared
    first eigenvector components are the weights.

    Args:
        order: number of nodes (>= 1)

    Returns:
        QuadratureRule exact for polynomials of degree <= 2 * order - 1
    """
    if order < 1:
        raise DomainError(f"quadrature order must be >= 1, got {order}")
    if order == 1:
        return QuadratureRule(np.zeros(1), np.ones(1))
    diagonal = np.zeros(order)
    off_diagonal = np.sqrt(np.arange(1, order, dtype=float))
    nodes, vectors = eigh_tridiagonal(diagonal, off_diagonal)
    weights = vectors[0, :] ** 2
    # the rule is symmetric about 0; symmetrizing removes eigen-solver noise
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    logger.debug(f"Gauss-Hermite rule: order={order}, max node={nodes[-1]:.4f}")
    return QuadratureRule(nodes, weights)


def uniform_gaussian_rule(spacing: float = 0.25, half_width: float = 8.0) -> QuadratureRule:
    """
    Trapezoidal rule for γ on the lattice spacing·ℤ ∩ [-half_width, half_width].

    Weights are the Gaussian density at the nodes, normalized. The lattice contains 0,
    so Gaussian shifts by multiples of the spacing act by index translation.
    """
    if spacing <= 0 or half_width <= 0:
        raise DomainError("spacing and half_width must be positive")
    steps = int(round(half_width / spacing))
    nodes = spacing * np.arange(-steps, steps + 1, dtype=float)
    return QuadratureRule(nodes, norm.pdf(nodes), kind="uniform")
