"""Finite families of functions of independent variables and the law of their supremum"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..core.errors import DomainError, SizeLimitError
from ..core.random import chunked_draws
from ..measure.spaces import FiniteSpace

MAX_EXACT_POINTS = 2**20
TAIL_SLACK = 1e-12


class LawMode(str, Enum):
    EXACT = "exact"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True, eq=False)
class ProcessInstance:
    """
    X_1..X_n independent, X_i with law spaces[i]; family of N functions.

    tables[i] has shape (N, |Ω_i|): row k holds g_k on Ω_i. Values lie in [-1, 1];
    scale records the sup-norm divided out by normalize().
    """

    spaces: Tuple[FiniteSpace, ...]
    tables: Tuple[np.ndarray, ...] = field(repr=False)
    scale: float = 1.0

    def __post_init__(self) -> None:
        spaces = tuple(self.spaces)
        if not spaces:
            raise DomainError("a process needs at least one variable")
        if len(self.tables) != len(spaces):
            raise DomainError(f"{len(self.tables)} value tables for {len(spaces)} variables")
        tables = []
        for i, (space, table) in enumerate(zip(spaces, self.tables)):
            table = np.array(table, dtype=float, ndmin=2)
            if table.shape[1] != space.cardinality:
                raise DomainError(
                    f"table {i} has {table.shape[1]} columns for |Ω| = {space.cardinality}"
                )
            if np.any(np.abs(table) > 1.0 + 1e-12) or np.any(np.isnan(table)):
                raise DomainError(f"table {i} leaves [-1, 1]; normalize the family first")
            table.setflags(write=False)
            tables.append(table)
        if len({t.shape[0] for t in tables}) != 1 or tables[0].shape[0] < 1:
            raise DomainError("every table needs the same number N >= 1 of functions")
        if self.scale <= 0:
            raise DomainError(f"scale must be positive, got {self.scale}")
        object.__setattr__(self, "spaces", spaces)
        object.__setattr__(self, "tables", tuple(tables))

    @classmethod
    def normalize(
        cls, spaces: Sequence[FiniteSpace], tables: Sequence[np.ndarray]
    ) -> "ProcessInstance":
        """Divide the family by its sup-norm so that |g_k| ≤ 1"""
        arrays = [np.array(t, dtype=float, ndmin=2) for t in tables]
        sup = max(float(np.max(np.abs(t))) for t in arrays)
        scale = sup if sup > 0 else 1.0
        return cls(tuple(spaces), tuple(t / scale for t in arrays), scale=scale)

    @property
    def n(self) -> int:
        return len(self.spaces)

    @property
    def N(self) -> int:
        return int(self.tables[0].shape[0])

    @property
    def cardinality(self) -> int:
        return math.prod(space.cardinality for space in self.spaces)

    def squared(self) -> "ProcessInstance":
        """The family g_k², whose supremum is W"""
        return ProcessInstance(self.spaces, tuple(t**2 for t in self.tables), self.scale**2)

    def map(self, fn: Callable[[np.ndarray], np.ndarray]) -> "ProcessInstance":
        return ProcessInstance(self.spaces, tuple(fn(t) for t in self.tables), self.scale)

    def is_nonnegative(self) -> bool:
        return all(np.all(t >= 0) for t in self.tables)

    def is_centered(self, tolerance: float = 1e-12) -> bool:
        return all(
            np.all(np.abs(t @ space.weights) <= tolerance)
            for space, t in zip(self.spaces, self.tables)
        )

    def is_symmetric(self, tolerance: float = 1e-12) -> bool:
        """Closed under negation: every g_k has some g_j = -g_k"""
        stacked = np.hstack(self.tables)
        return all(
            np.any(np.all(np.abs(stacked + row) <= tolerance, axis=1)) for row in stacked
        )


@dataclass(frozen=True, eq=False)
class SupStatistics:
    """Law of Z = max_k Σ_i g_k(X_i) and of W = max_k Σ_i g_k(X_i)²"""

    z: np.ndarray = field(repr=False)
    w: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    samples: Optional[int] = None

    @property
    def statistical(self) -> bool:
        return self.samples is not None

    @property
    def mean_z(self) -> float:
        return float(self.weights @ self.z)

    @property
    def v(self) -> float:
        return float(self.weights @ self.w)

    def mgf(self, lam: float) -> float:
        return float(self.weights @ np.exp(lam * self.z))

    def tail(self, r: float) -> float:
        """P(|Z - E(Z)| ≥ r)"""
        return float(self.weights[np.abs(self.z - self.mean_z) >= r - TAIL_SLACK].sum())

    def upper_tail(self, r: float) -> float:
        """P(Z ≥ E(Z) + r)"""
        return float(self.weights[self.z >= self.mean_z + r - TAIL_SLACK].sum())

    def tails(self, r_grid: Sequence[float]) -> Dict[float, float]:
        return {float(r): self.tail(r) for r in r_grid}

    def standard_error(self, probability: float) -> float:
        """Binomial standard error of an estimated probability (0 for exact laws)"""
        if self.samples is None:
            return 0.0
        p = min(max(probability, 0.0), 1.0)
        return math.sqrt(p * (1.0 - p) / self.samples)


def _sums(inst: ProcessInstance) -> List[np.ndarray]:
    """Σ_i g_k(x_i) for every k as tensors over the product space"""
    n = inst.n
    totals = []
    for k in range(inst.N):
        total = np.zeros(())
        for i, table in enumerate(inst.tables):
            shape = [1] * n
            shape[i] = table.shape[1]
            total = total + table[k].reshape(shape)
        totals.append(total.reshape(-1))
    return totals


def exact_weights(inst: ProcessInstance) -> np.ndarray:
    weights = np.ones(())
    for space in inst.spaces:
        weights = np.multiply.outer(weights, space.weights)
    return weights.reshape(-1)


def supremum_law(
    inst: ProcessInstance,
    mode: LawMode | str = LawMode.EXACT,
    samples: int = 100_000,
    seed: int = 0,
    stream: int = 0,
) -> SupStatistics:
    """
    Law of the supremum, by enumeration or by seeded Monte Carlo.

    Raises:
        SizeLimitError: exact mode on more than 2^20 product points
    """
    mode = LawMode(mode)
    if mode is LawMode.EXACT:
        if inst.cardinality > MAX_EXACT_POINTS:
            raise SizeLimitError(
                f"{inst.cardinality} product points exceed the exact cap {MAX_EXACT_POINTS}"
            )
        z = np.max(_sums(inst), axis=0)
        w = np.max(_sums(inst.squared()), axis=0)
        return SupStatistics(z=z, w=w, weights=exact_weights(inst))

    if samples < 1:
        raise DomainError("Monte Carlo needs at least one sample")

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        sums = np.zeros((inst.N, size))
        squares = np.zeros((inst.N, size))
        for space, table in zip(inst.spaces, inst.tables):
            index = rng.choice(space.cardinality, size=size, p=space.weights)
            sums += table[:, index]
            squares += table[:, index] ** 2
        return np.column_stack([sums.max(axis=0), squares.max(axis=0)])

    draws = chunked_draws(seed, stream, samples, draw)
    logger.debug(f"supremum law: {samples} Monte Carlo draws for n={inst.n} N={inst.N}")
    return SupStatistics(
        z=draws[:, 0], w=draws[:, 1], weights=np.full(samples, 1.0 / samples), samples=samples
    )


def random_instance(
    rng: np.random.Generator,
    n: int,
    N: int,
    space_size: int = 2,
    nonnegative: bool = False,
    symmetric: bool = False,
) -> ProcessInstance:
    """
    Seeded family on n copies of a random law on space_size points.

    symmetric draws N // 2 centered functions and adds their negatives; an odd N
    also carries the zero function, its own negative.
    """
    if n < 1 or N < 1 or space_size < 2:
        raise DomainError("need n >= 1, N >= 1 and at least two sample points")
    raw = rng.dirichlet(np.ones(space_size))
    space = FiniteSpace(tuple(range(space_size)), raw)
    if symmetric:
        base = rng.uniform(-1.0, 1.0, size=(N // 2, space_size))
        base = base - (base @ space.weights)[:, None]
        family = np.vstack([base, -base, np.zeros((N % 2, space_size))])
    elif nonnegative:
        family = rng.uniform(0.0, 1.0, size=(N, space_size))
    else:
        family = rng.uniform(-1.0, 1.0, size=(N, space_size))
    return ProcessInstance.normalize([space] * n, [family] * n)


def sign_instance(n: int, symmetric: bool = False) -> ProcessInstance:
    """Fair ±1 coins with g(x) = x, and -g when symmetric"""
    space = FiniteSpace.uniform((-1, 1))
    family = np.array([[-1.0, 1.0], [1.0, -1.0]]) if symmetric else np.array([[-1.0, 1.0]])
    return ProcessInstance((space,) * n, (family,) * n)
