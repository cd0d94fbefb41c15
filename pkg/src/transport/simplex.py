"""Quadratic optimal transport by the transportation simplex method"""

import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

import numpy as np
from loguru import logger
from scipy.optimize import linprog
from scipy.sparse import coo_matrix

from ..core.errors import DomainError, SizeLimitError, SolverError
from .measures import DiscreteMeasure

MAX_SIDE = 256
MARGINAL_TOLERANCE = 1e-10
FEASIBILITY_TOLERANCE = 1e-9
GAP_TOLERANCE = 1e-8
CLAMP = 1e-14
REDUCED_COST_SLACK = 1e-11


@dataclass(frozen=True, eq=False)
class TransportPlan:
    """Coupling matrix π (|supp μ| × |supp ν|) and its quadratic cost"""

    matrix: np.ndarray = field(repr=False)
    cost: float

    def to_text(self) -> str:
        """Dense matrix, one row per μ point"""
        return "\n".join(" ".join(repr(float(v)) for v in row) for row in self.matrix) + "\n"

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_text())


@dataclass(frozen=True, eq=False)
class DualPotentials:
    """psi per μ point, phi per ν point, with psi_i + phi_j ≤ ‖x_i - y_j‖²"""

    psi: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)

    def value(self, mu: DiscreteMeasure, nu: DiscreteMeasure) -> float:
        return float(mu.weights @ self.psi + nu.weights @ self.phi)


class W2Solution(NamedTuple):
    distance: float
    plan: TransportPlan
    potentials: DualPotentials


def squared_costs(mu: DiscreteMeasure, nu: DiscreteMeasure) -> np.ndarray:
    if mu.dimension != nu.dimension:
        raise DomainError(f"dimension mismatch: {mu.dimension} vs {nu.dimension}")
    diff = mu.support[:, None, :] - nu.support[None, :, :]
    return np.sum(diff**2, axis=2)


def _northwest_corner(a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, List[Tuple[int, int]]]:
    """Initial basic feasible solution with exactly m + n - 1 basic cells"""
    m, n = a.size, b.size
    flow = np.zeros((m, n))
    supply, demand = a.copy(), b.copy()
    basis = []
    i = j = 0
    while True:
        amount = max(min(supply[i], demand[j]), 0.0)
        flow[i, j] = amount
        supply[i] -= amount
        demand[j] -= amount
        basis.append((i, j))
        if i == m - 1 and j == n - 1:
            break
        if j == n - 1 or (i < m - 1 and supply[i] <= demand[j]):
            i += 1
        else:
            j += 1
    return flow, basis


def _adjacency(basis: List[Tuple[int, int]], m: int, n: int) -> List[List[int]]:
    """Spanning-tree adjacency; rows are nodes 0..m-1, columns m..m+n-1"""
    adjacency: List[List[int]] = [[] for _ in range(m + n)]
    for i, j in basis:
        adjacency[i].append(m + j)
        adjacency[m + j].append(i)
    return adjacency


def _potentials(
    costs: np.ndarray, adjacency: List[List[int]], m: int
) -> Tuple[np.ndarray, np.ndarray]:
    """u_i + v_j = c_ij on basic cells, u_0 = 0"""
    values = np.full(len(adjacency), np.nan)
    values[0] = 0.0
    queue = deque([0])
    while queue:
        node = queue.popleft()
        for other in adjacency[node]:
            if np.isnan(values[other]):
                i, j = (node, other - m) if node < m else (other, node - m)
                values[other] = costs[i, j] - values[node]
                queue.append(other)
    if np.any(np.isnan(values)):
        raise SolverError("basis is not a spanning tree")
    return values[:m], values[m:]


def _tree_path(adjacency: List[List[int]], start: int, goal: int) -> List[int]:
    parent: Dict[int, int] = {start: start}
    queue = deque([start])
    while queue and goal not in parent:
        node = queue.popleft()
        for other in adjacency[node]:
            if other not in parent:
                parent[other] = node
                queue.append(other)
    if goal not in parent:
        raise SolverError("entering cell has no tree path")
    path = [goal]
    while path[-1] != start:
        path.append(parent[path[-1]])
    return path[::-1]


def transportation_simplex(
    a: np.ndarray, b: np.ndarray, costs: np.ndarray, max_pivots: Optional[int] = None
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Solve min Σ c_ij π_ij over couplings of a and b.

    Northwest-corner start, potentials from u_0 = 0, Bland's rule for the entering
    cell (first negative reduced cost in row-major order) and the leaving cell
    (smallest flat index among the minimal minus cells of the cycle).

    Returns:
        (flow, u, v) at optimality
    """
    m, n = costs.shape
    if m > MAX_SIDE or n > MAX_SIDE:
        raise SizeLimitError(f"{m}×{n} transport problem exceeds {MAX_SIDE}×{MAX_SIDE}")
    flow, basis = _northwest_corner(a, b)
    slack = REDUCED_COST_SLACK * max(1.0, float(np.max(np.abs(costs))))
    max_pivots = max_pivots or 50 * m * n + 100
    for pivot in range(max_pivots):
        adjacency = _adjacency(basis, m, n)
        u, v = _potentials(costs, adjacency, m)
        reduced = (costs - u[:, None] - v[None, :]).reshape(-1)
        candidates = np.flatnonzero(reduced < -slack)
        if candidates.size == 0:
            logger.debug(f"transportation simplex: optimal after {pivot} pivots ({m}×{n})")
            return flow, u, v
        entering = divmod(int(candidates[0]), n)
        path = _tree_path(adjacency, entering[0], m + entering[1])
        cycle = [
            (node, nxt - m) if node < m else (nxt, node - m) for node, nxt in zip(path, path[1:])
        ]
        minus = cycle[0::2]
        plus = cycle[1::2]
        theta = min(flow[cell] for cell in minus)
        tied = [cell for cell in minus if flow[cell] == theta]
        leaving = min(tied, key=lambda c: c[0] * n + c[1])
        for cell in minus:
            flow[cell] -= theta
        for cell in plus:
            flow[cell] += theta
        flow[entering] += theta
        flow[leaving] = 0.0
        basis.remove(leaving)
        basis.append(entering)
    raise SolverError(f"transportation simplex did not converge in {max_pivots} pivots")


def _certify(
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    costs: np.ndarray,
    flow: np.ndarray,
    potentials: DualPotentials,
) -> float:
    rows = np.max(np.abs(flow.sum(axis=1) - mu.weights))
    cols = np.max(np.abs(flow.sum(axis=0) - nu.weights))
    if max(rows, cols) > MARGINAL_TOLERANCE:
        raise SolverError(f"plan marginals off by {max(rows, cols):.3e}")
    violation = float(np.max(potentials.psi[:, None] + potentials.phi[None, :] - costs))
    if violation > FEASIBILITY_TOLERANCE * max(1.0, float(np.max(costs))):
        raise SolverError(f"dual potentials infeasible by {violation:.3e}")
    cost = float(np.sum(flow * costs))
    gap = abs(cost - potentials.value(mu, nu))
    if gap > GAP_TOLERANCE * (1.0 + cost):
        logger.error(f"✗ primal-dual gap {gap:.3e} at cost {cost:.6g}")
        raise SolverError(f"primal-dual gap {gap:.3e} exceeds certificate tolerance")
    return cost


def w2(mu: DiscreteMeasure, nu: DiscreteMeasure) -> W2Solution:
    """
    Quadratic Kantorovich distance with a certified optimal plan.

    Returns:
        (W₂, plan, potentials); the plan has the right marginals and the potentials
        are dual feasible with matching value

    Raises:
        DomainError: supports in different dimensions
        SolverError: a certificate fails
    """
    costs = squared_costs(mu, nu)
    flow, u, v = transportation_simplex(mu.weights, nu.weights, costs)
    if np.any(flow < -CLAMP):
        raise SolverError(f"negative plan entry {flow.min()!r}")
    flow = np.maximum(flow, 0.0)
    potentials = DualPotentials(psi=u, phi=v)
    cost = _certify(mu, nu, costs, flow, potentials)
    cost = max(cost, 0.0)
    return W2Solution(math.sqrt(cost), TransportPlan(flow, cost), potentials)


def linprog_cost(mu: DiscreteMeasure, nu: DiscreteMeasure) -> float:
    """Optimal quadratic cost through the HiGHS linear-programming solver"""
    costs = squared_costs(mu, nu)
    m, n = costs.shape
    cells = np.arange(m * n)
    rows = np.concatenate([cells // n, m + cells % n])
    constraints = coo_matrix((np.ones(2 * m * n), (rows, np.tile(cells, 2))), shape=(m + n, m * n))
    result = linprog(
        costs.reshape(-1),
        A_eq=constraints.tocsc(),
        b_eq=np.concatenate([mu.weights, nu.weights]),
        bounds=(0, None),
        method="highs",
    )
    if not result.success:
        raise SolverError(f"linprog failed: {result.message}")
    return float(result.fun)


def quantile_cost(mu: DiscreteMeasure, nu: DiscreteMeasure) -> float:
    """W₂² on the line through the monotone (quantile) coupling"""
    if mu.dimension != 1 or nu.dimension != 1:
        raise DomainError("the quantile coupling is one-dimensional")
    xs_order = np.argsort(mu.support[:, 0])
    ys_order = np.argsort(nu.support[:, 0])
    xs, a = mu.support[xs_order, 0], mu.weights[xs_order]
    ys, b = nu.support[ys_order, 0], nu.weights[ys_order]
    levels = np.union1d(np.cumsum(a), np.cumsum(b))
    levels = np.clip(levels, 0.0, 1.0)
    steps = np.diff(np.concatenate([[0.0], levels]))
    midpoints = levels - steps / 2
    x_at = xs[np.minimum(np.searchsorted(np.cumsum(a), midpoints), xs.size - 1)]
    y_at = ys[np.minimum(np.searchsorted(np.cumsum(b), midpoints), ys.size - 1)]
    return float(np.sum(steps * (x_at - y_at) ** 2))
