"""The biased discrete cube {-1,+1}^n under μ_p^n and functions on it"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Union

import numpy as np
from scipy.special import logsumexp

from ..core.errors import DomainError, SizeLimitError
from ..measure.spaces import FieldFunction, FiniteSpace, ProductSpace

MAX_CUBE_DIMENSION = 20
SYMMETRIC_BRANCH = 1e-12


@dataclass(frozen=True)
class BiasedCube:
    """{-1,+1}^n with P(x_i = +1) = p independently"""

    n: int
    p: float

    def __post_init__(self) -> None:
        if not 0.0 < self.p < 1.0:
            raise DomainError(f"p must lie in (0, 1), got {self.p}")
        if self.n < 1:
            raise DomainError(f"dimension must be >= 1, got {self.n}")
        if self.n > MAX_CUBE_DIMENSION:
            raise SizeLimitError(f"n = {self.n} exceeds the cap {MAX_CUBE_DIMENSION}")

    @property
    def q(self) -> float:
        return 1.0 - self.p

    @property
    def rho(self) -> float:
        """Log-Sobolev constant: (p - q)/(log p - log q), 1/2 at p = 1/2"""
        if abs(self.p - 0.5) < SYMMETRIC_BRANCH:
            return 0.5
        return (self.p - self.q) / (math.log(self.p) - math.log(self.q))

    @property
    def size(self) -> int:
        return 2**self.n

    @property
    def shape(self) -> tuple[int, ...]:
        return (2,) * self.n

    @property
    def coordinate_weights(self) -> np.ndarray:
        """Weights of (-1, +1) on one coordinate"""
        return np.array([self.q, self.p])

    @cached_property
    def weight_tensor(self) -> np.ndarray:
        tensor = np.ones(())
        for _ in range(self.n):
            tensor = np.multiply.outer(tensor, self.coordinate_weights)
        tensor.setflags(write=False)
        return tensor

    @property
    def weights(self) -> np.ndarray:
        return self.weight_tensor.reshape(-1)

    @cached_property
    def points(self) -> np.ndarray:
        """(2^n, n) sign vectors in lexicographic order, -1 before +1"""
        bits = np.indices(self.shape).reshape(self.n, -1).T
        signs = 2 * bits - 1
        signs.setflags(write=False)
        return signs

    def as_product_space(self) -> ProductSpace:
        return ProductSpace.power(FiniteSpace.two_point(self.p), self.n)


@dataclass(frozen=True, eq=False)
class CubeFunction:
    """Value table over the 2^n sign vectors of a BiasedCube"""

    cube: BiasedCube
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.size != self.cube.size:
            raise DomainError(f"{values.size} values for a cube of {self.cube.size} points")
        if np.any(np.isnan(values)):
            raise DomainError("NaN values are not allowed")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_points(
        cls, cube: BiasedCube, fn: Callable[[np.ndarray], np.ndarray]
    ) -> "CubeFunction":
        """fn maps the (2^n, n) sign array to 2^n values"""
        return cls(cube, fn(cube.points.astype(float)))

    @classmethod
    def from_tensor(cls, cube: BiasedCube, tensor: np.ndarray) -> "CubeFunction":
        return cls(cube, np.asarray(tensor).reshape(-1))

    @classmethod
    def constant(cls, cube: BiasedCube, c: float) -> "CubeFunction":
        return cls(cube, np.full(cube.size, float(c)))

    @classmethod
    def coordinate(cls, cube: BiasedCube, i: int) -> "CubeFunction":
        if not 0 <= i < cube.n:
            raise DomainError(f"coordinate {i} out of range for n = {cube.n}")
        return cls(cube, cube.points[:, i].astype(float))

    def tensor(self) -> np.ndarray:
        return self.values.reshape(self.cube.shape)

    def mean(self) -> float:
        return float(self.cube.weights @ self.values)

    def inner(self, other: "CubeFunction") -> float:
        check_same_cube(self, other)
        return float(self.cube.weights @ (self.values * other.values))

    def norm(self, r: float) -> float:
        """‖f‖_r = (∫ |f|^r)^{1/r}, via log-sum-exp over the nonzero values"""
        if r <= 0:
            raise DomainError(f"norm exponent must be positive, got {r}")
        magnitude = np.abs(self.values)
        nonzero = magnitude > 0
        if not np.any(nonzero):
            return 0.0
        log_integral = logsumexp(r * np.log(magnitude[nonzero]), b=self.cube.weights[nonzero])
        return float(np.exp(log_integral / r))

    def map(self, fn: Callable[[np.ndarray], np.ndarray]) -> "CubeFunction":
        return CubeFunction(self.cube, fn(self.values))

    def centered(self) -> "CubeFunction":
        return CubeFunction(self.cube, self.values - self.mean())

    def to_field(self) -> FieldFunction:
        return FieldFunction(self.cube.as_product_space(), self.values)

    def __add__(self, other: Union["CubeFunction", float]) -> "CubeFunction":
        if isinstance(other, CubeFunction):
            check_same_cube(self, other)
            return CubeFunction(self.cube, self.values + other.values)
        return CubeFunction(self.cube, self.values + float(other))

    __radd__ = __add__

    def __sub__(self, other: Union["CubeFunction", float]) -> "CubeFunction":
        if isinstance(other, CubeFunction):
            check_same_cube(self, other)
            return CubeFunction(self.cube, self.values - other.values)
        return CubeFunction(self.cube, self.values - float(other))

    def __mul__(self, other: Union["CubeFunction", float]) -> "CubeFunction":
        if isinstance(other, CubeFunction):
            check_same_cube(self, other)
            return CubeFunction(self.cube, self.values * other.values)
        return CubeFunction(self.cube, self.values * float(other))

    __rmul__ = __mul__

    def __neg__(self) -> "CubeFunction":
        return CubeFunction(self.cube, -self.values)


def check_same_cube(f: CubeFunction, g: CubeFunction) -> None:
    if f.cube != g.cube:
        raise DomainError(f"cube mismatch: {f.cube} vs {g.cube}")
