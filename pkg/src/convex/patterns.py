"""Sets A in a finite product space and the hull instances they induce"""

from dataclasses import dataclass, field
from typing import Iterable, Tuple

import numpy as np

from ..core.errors import DomainError
from ..measure.spaces import ProductSpace


@dataclass(frozen=True, eq=False)
class PatternSet:
    """A ⊂ Ω as sorted flat point indices of the base product space"""

    base: ProductSpace
    members: Tuple[int, ...]

    def __post_init__(self) -> None:
        members = tuple(sorted(set(int(m) for m in self.members)))
        if not members:
            raise DomainError("the set A must be non-empty")
        if members[0] < 0 or members[-1] >= self.base.cardinality:
            raise DomainError("member index out of range")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_tuples(cls, base: ProductSpace, tuples: Iterable[Iterable[int]]) -> "PatternSet":
        """Members given as per-factor point indices"""
        return cls(base, tuple(base.index_of(tuple(t)) for t in tuples))

    @property
    def measure(self) -> float:
        return float(self.base.weights[list(self.members)].sum())

    @property
    def member_grid(self) -> np.ndarray:
        """(|A|, n) per-factor indices of the members"""
        return self.base.index_grid()[list(self.members)]

    def contains(self, x: int) -> bool:
        return x in set(self.members)

    def mask(self) -> np.ndarray:
        out = np.zeros(self.base.cardinality, dtype=bool)
        out[list(self.members)] = True
        return out

    def is_subset_of(self, other: "PatternSet") -> bool:
        return self.base == other.base and set(self.members) <= set(other.members)


@dataclass(frozen=True, eq=False)
class HullInstance:
    """Deduplicated 0/1 patterns 1{x_i ≠ y_i}, y ∈ A, whose hull is V_A(x)"""

    vertices: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        vertices = np.asarray(self.vertices, dtype=float)
        if vertices.ndim != 2 or vertices.shape[0] == 0:
            raise DomainError("a hull needs a non-empty (m, n) vertex array")
        if not np.all((vertices == 0) | (vertices == 1)):
            raise DomainError("hull vertices must be 0/1 vectors")
        vertices = np.unique(vertices, axis=0)
        vertices.setflags(write=False)
        object.__setattr__(self, "vertices", vertices)

    @property
    def dimension(self) -> int:
        return int(self.vertices.shape[1])

    def has_origin(self) -> bool:
        return bool(np.any(~self.vertices.any(axis=1)))


def build_hull(A: PatternSet, x: int) -> HullInstance:
    """Patterns of every member of A against the point with flat index x"""
    if not 0 <= x < A.base.cardinality:
        raise DomainError(f"point index {x} out of range")
    point = A.base.index_grid()[x]
    return HullInstance((A.member_grid != point).astype(float))
