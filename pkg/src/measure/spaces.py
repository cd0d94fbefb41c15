"""Finite probability spaces, their products, and functions on them"""

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterator, Sequence, Tuple, Union

import numpy as np

from ..core.errors import DomainError, SizeLimitError

NORMALIZATION_SLACK = 1e-9
MAX_PRODUCT_POINTS = 2**22


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _normalized_weights(weights: Sequence[float]) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise DomainError("weights must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise DomainError("weights must be finite and nonnegative")
    total = float(w.sum())
    if abs(total - 1.0) > NORMALIZATION_SLACK:
        raise DomainError(f"weights sum to {total!r}, not 1")
    return _frozen(w / total)


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """Weighted finite point set (Ω, μ); points are opaque hashable labels"""

    points: Tuple[Hashable, ...]
    weights: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "weights", _normalized_weights(self.weights))
        if len(self.points) != self.weights.size:
            raise DomainError(
                f"{len(self.points)} points but {self.weights.size} weights"
            )
        if len(set(self.points)) != len(self.points):
            raise DomainError("points must be distinct")

    @classmethod
    def uniform(cls, points: Sequence[Hashable]) -> "FiniteSpace":
        return cls(tuple(points), np.full(len(points), 1.0 / len(points)))

    @classmethod
    def two_point(cls, p: float, points: Tuple[Hashable, Hashable] = (-1, 1)) -> "FiniteSpace":
        """Bernoulli law: weight p on points[1], 1 - p on points[0]"""
        if not 0.0 < p < 1.0:
            raise DomainError(f"p must lie in (0, 1), got {p}")
        return cls(points, np.array([1.0 - p, p]))

    @property
    def cardinality(self) -> int:
        return len(self.points)

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.cardinality,)

    def __len__(self) -> int:
        return self.cardinality

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self.points == other.points and np.array_equal(self.weights, other.weights)

    def __hash__(self) -> int:
        return hash((self.points, self.weights.tobytes()))


@dataclass(frozen=True, eq=False)
class ProductSpace:
    """
    Product of finite spaces with the product measure P.

    Points are enumerated lexicographically in factor point order, so the
    flat index of a tuple is np.ravel_multi_index over the factor sizes.
    """

    factors: Tuple[FiniteSpace, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise DomainError("a product space needs at least one factor")
        size = 1
        for factor in self.factors:
            size *= factor.cardinality
        if size > MAX_PRODUCT_POINTS:
            raise SizeLimitError(f"product space has {size} points, cap is {MAX_PRODUCT_POINTS}")

    @classmethod
    def power(cls, factor: FiniteSpace, n: int) -> "ProductSpace":
        if n < 1:
            raise DomainError(f"dimension must be >= 1, got {n}")
        return cls(tuple([factor] * n))

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(f.cardinality for f in self.factors)

    @property
    def dimension(self) -> int:
        return len(self.factors)

    @property
    def cardinality(self) -> int:
        return int(np.prod(self.shape))

    def __len__(self) -> int:
        return self.cardinality

    @cached_property
    def weight_tensor(self) -> np.ndarray:
        tensor = np.ones(())
        for factor in self.factors:
            tensor = np.multiply.outer(tensor, factor.weights)
        return _frozen(tensor)

    @property
    def weights(self) -> np.ndarray:
        return self.weight_tensor.reshape(-1)

    def index_grid(self) -> np.ndarray:
        """(cardinality, n) array of per-factor point indices, in enumeration order"""
        return np.indices(self.shape).reshape(self.dimension, -1).T

    def iter_points(self) -> Iterator[Tuple[Hashable, ...]]:
        return itertools.product(*(f.points for f in self.factors))

    def index_of(self, indices: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(indices), self.shape))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProductSpace):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)


Space = Union[FiniteSpace, ProductSpace]


@dataclass(frozen=True, eq=False)
class FieldFunction:
    """Real function on a finite space, stored in the space's point order"""

    space: Space
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.size != self.space.cardinality:
            raise DomainError(
                f"{values.size} values for a space of {self.space.cardinality} points"
            )
        if np.any(np.isnan(values)):
            raise DomainError("NaN values are not allowed")
        object.__setattr__(self, "values", _frozen(values))

    @classmethod
    def from_callable(cls, space: Space, fn: Callable[..., float]) -> "FieldFunction":
        """Evaluate fn on every point (a label, or a tuple of labels on a product)"""
        if isinstance(space, FiniteSpace):
            return cls(space, np.array([fn(x) for x in space.points], dtype=float))
        return cls(space, np.array([fn(x) for x in space.iter_points()], dtype=float))

    @classmethod
    def constant(cls, space: Space, c: float) -> "FieldFunction":
        return cls(space, np.full(space.cardinality, float(c)))

    def tensor(self) -> np.ndarray:
        return self.values.reshape(self.space.shape)

    def mean(self) -> float:
        return float(self.space.weights @ self.values)

    def map(self, fn: Callable[[np.ndarray], np.ndarray]) -> "FieldFunction":
        return FieldFunction(self.space, fn(self.values))

    def __add__(self, other: Union["FieldFunction", float]) -> "FieldFunction":
        if isinstance(other, FieldFunction):
            _check_same_space(self, other)
            return FieldFunction(self.space, self.values + other.values)
        return FieldFunction(self.space, self.values + float(other))

    def __mul__(self, c: float) -> "FieldFunction":
        return FieldFunction(self.space, self.values * float(c))

    __rmul__ = __mul__


def _check_same_space(f: FieldFunction, g: FieldFunction) -> None:
    if f.space != g.space:
        raise DomainError("functions live on different spaces")
