"""Convex distance inequality, its entropy-method chain, and the two corollaries"""

import math
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger
from scipy.optimize import minimize
from scipy.special import xlogy

from ..core.errors import DomainError, PreconditionError
from ..core.report import VerificationReport
from ..measure.spaces import FieldFunction, FiniteSpace, ProductSpace
from .distance import convex_distance, dual_distance
from .patterns import PatternSet

MOMENT_CONSTANTS = (1 / 4, 1 / 14)
HYPOTHESIS_SLACK = 1e-8
TAIL_SLACK = 1e-12


class CorollaryMode(str, Enum):
    WEIGHTED_HAMMING = "weighted_hamming"
    CONVEX_LIPSCHITZ = "convex_lipschitz"


def _distances(A: PatternSet, distances: Optional[np.ndarray]) -> np.ndarray:
    return convex_distance(A) if distances is None else np.asarray(distances, dtype=float)


def convex_distance_moment(
    A: PatternSet, c: float, distances: Optional[np.ndarray] = None, tolerance: float = 1e-10
) -> VerificationReport:
    """∫ e^{c d_A²} dP ≤ 1/P(A) for c ∈ {1/4, 1/14}"""
    if not any(abs(c - allowed) < 1e-15 for allowed in MOMENT_CONSTANTS):
        raise PreconditionError(f"exponent constant must be 1/4 or 1/14, got {c}")
    d = _distances(A, distances)
    lhs = float(A.base.weights @ np.exp(c * d**2))
    rhs = 1.0 / A.measure
    return VerificationReport.compare(
        f"convex_distance_moment_{'quarter' if c > 0.2 else 'fourteenth'}",
        lhs,
        rhs,
        tolerance * rhs,
        witness=f"A={list(A.members)}",
        c=c,
        measure=A.measure,
    )


def dual_identity_check(
    A: PatternSet, distances: Optional[np.ndarray] = None, tolerance: float = 1e-8
) -> VerificationReport:
    """max over x of |F_A(x) - d_A(x)|, which must vanish"""
    d = _distances(A, distances)
    dual = np.array([dual_distance(A, x) for x in range(A.base.cardinality)])
    worst = int(np.argmax(np.abs(dual - d)))
    return VerificationReport.compare(
        "dual_distance_identity",
        float(abs(dual[worst] - d[worst])),
        0.0,
        tolerance,
        witness=f"x={worst}",
    )


def square_lipschitz_check(
    A: PatternSet, distances: Optional[np.ndarray] = None, tolerance: float = 1e-8
) -> VerificationReport:
    """max over x, i, y_i of d_A(x)² - d_A(y)² ≤ 1, y differing from x in coordinate i"""
    squares = _distances(A, distances).reshape(A.base.shape) ** 2
    best, witness = -math.inf, ""
    for i in range(A.base.dimension):
        spread = squares.max(axis=i) - squares.min(axis=i)
        k = int(np.argmax(spread))
        if spread.reshape(-1)[k] > best:
            best = float(spread.reshape(-1)[k])
            witness = f"coordinate={i} slice={k}"
    return VerificationReport.compare("square_lipschitz", best, 1.0, tolerance, witness=witness)


def _entropy(weights: np.ndarray, values: np.ndarray) -> float:
    m = float(weights @ values)
    return float(weights @ xlogy(values, values)) - m * math.log(m)


def convex_distance_chain(
    A: PatternSet,
    distances: Optional[np.ndarray] = None,
    lambdas: Sequence[float] = (0.05, 0.1, 0.2),
    tolerance: float = 1e-10,
) -> List[VerificationReport]:
    """
    The intermediate bounds of the entropy-method proof, each checked exactly.

    F = d_A, M₂ = ∫ F² dP.
    """
    d = _distances(A, distances)
    w = A.base.weights
    pa = A.measure
    sq = d**2
    m2 = float(w @ sq)
    var_sq = float(w @ sq**2) - m2**2
    moment = float(w @ np.exp(sq / 14))
    negative = float(w @ np.exp(-sq / 2))

    def rel(*values: float) -> float:
        return tolerance * max([1.0, *(abs(v) for v in values)])

    reports = [
        VerificationReport.compare(
            "moment_fourteenth_vs_m2", moment, math.exp(m2 / 10), rel(moment, math.exp(m2 / 10))
        ),
        VerificationReport.compare("m2_vs_measure", m2, 8 / pa, rel(m2, 8 / pa)),
        VerificationReport.compare("square_variance", var_sq, 8 * m2, rel(var_sq, m2)),
        VerificationReport.compare(
            "moment_fourteenth_vs_measure",
            moment,
            math.exp(4 / (5 * pa)),
            rel(moment, math.exp(4 / (5 * pa))),
        ),
        VerificationReport.compare(
            "negative_moment_half", negative, math.exp(-m2 / 10), rel(negative)
        ),
        VerificationReport.compare("m2_vs_log_measure", m2 / 10, math.log(1 / pa), rel(m2)),
    ]
    for lam in lambdas:
        up = np.exp(lam * sq)
        lhs = _entropy(w, up)
        rhs = 4 * lam**2 * float(w @ (sq * up))
        reports.append(
            VerificationReport.compare("square_entropy", lhs, rhs, rel(lhs, rhs), lam=lam)
        )
        log_mgf = math.log(float(w @ up))
        bound = lam * m2 / (1 - 4 * lam)
        reports.append(
            VerificationReport.compare("square_log_mgf", log_mgf, bound, rel(bound), lam=lam)
        )
    for lam in (0.1, 0.25, 0.5):
        down = np.exp(-lam * sq)
        lhs = _entropy(w, down)
        rhs = 4 * lam**2 * math.exp(lam) * float(w @ (sq * down))
        reports.append(
            VerificationReport.compare(
                "negative_square_entropy", lhs, rhs, rel(lhs, rhs), lam=lam
            )
        )
        log_mgf = math.log(float(w @ down))
        bound = -lam * m2 / (1 + 8 * lam)
        reports.append(
            VerificationReport.compare(
                "negative_square_log_mgf", log_mgf, bound, rel(bound), lam=lam
            )
        )
    return reports


def median(F: FieldFunction) -> float:
    """Smallest M with P(F ≤ M) ≥ 1/2"""
    order = np.argsort(F.values, kind="stable")
    cumulative = np.cumsum(F.space.weights[order])
    k = int(np.searchsorted(cumulative, 0.5 - 1e-12))
    return float(F.values[order][min(k, len(order) - 1)])


def _min_norm_feasible(rows: np.ndarray, bounds: np.ndarray, nonnegative: bool) -> np.ndarray:
    """argmin ‖a‖ subject to rows @ a ≥ bounds (and a ≥ 0 if asked)"""
    n = rows.shape[1]
    result = minimize(
        lambda a: float(a @ a),
        x0=np.full(n, 1.0 / math.sqrt(n)),
        jac=lambda a: 2 * a,
        method="SLSQP",
        bounds=[(0.0, None)] * n if nonnegative else None,
        constraints=[{"type": "ineq", "fun": lambda a: rows @ a - bounds, "jac": lambda a: rows}],
        options={"ftol": 1e-12, "maxiter": 500},
    )
    return np.asarray(result.x, dtype=float)


def _point_coordinates(space: ProductSpace, mode: CorollaryMode) -> np.ndarray:
    grid = space.index_grid()
    if mode is CorollaryMode.WEIGHTED_HAMMING:
        return grid.astype(float)
    coords = np.empty(grid.shape)
    for i, factor in enumerate(space.factors):
        labels = np.asarray(factor.points, dtype=float)
        if np.any(labels < 0) or np.any(labels > 1):
            raise PreconditionError(f"factor {i} points are not embedded in [0, 1]")
        coords[:, i] = labels[grid[:, i]]
    return coords


def verify_corollary_hypothesis(
    F: FieldFunction,
    mode: CorollaryMode | str,
    scale: float = 1.0,
    certificates: Optional[np.ndarray] = None,
) -> None:
    """
    Check the corollary's hypothesis at every point.

    weighted_hamming: ∃ a ≥ 0, ‖a‖ ≤ scale with
    F(x) ≤ F(y) + Σ a_i 1{x_i ≠ y_i} ∀y.
    convex_lipschitz: ∃ s, ‖s‖ ≤ scale with F(y) ≥ F(x) + ⟨s, y - x⟩ ∀y, so the grid
    values extend to a convex scale-Lipschitz function on [0,1]^n.
    Per-point vectors a(x) or s(x) may be supplied as certificates; otherwise they
    are found by a min-norm quadratic program.

    Raises:
        PreconditionError: with the violating (x, y) pair as witness
    """
    mode = CorollaryMode(mode)
    space = F.space
    if not isinstance(space, ProductSpace):
        raise DomainError("corollaries need a function on a product space")
    coords = _point_coordinates(space, mode)
    values = F.values
    for x in range(space.cardinality):
        gaps = values[x] - values
        if mode is CorollaryMode.WEIGHTED_HAMMING:
            rows = (coords != coords[x]).astype(float)
            active = gaps > HYPOTHESIS_SLACK
        else:
            rows = coords[x] - coords
            active = gaps > -scale * np.linalg.norm(rows, axis=1) - HYPOTHESIS_SLACK
        if not active.any():
            continue
        if certificates is not None:
            vector = np.asarray(certificates[x], dtype=float)
        else:
            vector = _min_norm_feasible(
                rows[active], gaps[active], mode is CorollaryMode.WEIGHTED_HAMMING
            )
        slack = rows @ vector - gaps
        y = int(np.argmin(slack))
        too_long = float(np.linalg.norm(vector)) > scale * (1 + 1e-7)
        negative = mode is CorollaryMode.WEIGHTED_HAMMING and np.any(vector < -HYPOTHESIS_SLACK)
        if slack[y] < -HYPOTHESIS_SLACK * max(1.0, abs(values[x])) or too_long or negative:
            raise PreconditionError(
                f"{mode.value} hypothesis fails at x={x}", witness=f"(x={x}, y={y})"
            )


def corollary_concentration(
    F: FieldFunction,
    mode: CorollaryMode | str,
    r_grid: Sequence[float],
    scale: float = 1.0,
    certificates: Optional[np.ndarray] = None,
) -> List[VerificationReport]:
    """
    P(|F - M| ≥ r) ≤ 4 e^{-r²/(4 scale²)} for an exact median M, after the hypothesis check.

    Also reports |∫F - M| ≤ 8 scale.
    """
    mode = CorollaryMode(mode)
    verify_corollary_hypothesis(F, mode, scale, certificates)
    m = median(F)
    deviation = np.abs(F.values - m)
    weights = F.space.weights
    reports = []
    for r in r_grid:
        if r < 0:
            raise DomainError(f"r must be nonnegative, got {r}")
        tail = float(weights[deviation >= r - TAIL_SLACK].sum())
        bound = 4.0 * math.exp(-(r**2) / (4 * scale**2))
        reports.append(
            VerificationReport.compare(
                f"corollary_{mode.value}", tail, bound, 1e-12, r=float(r), median=m
            )
        )
    reports.append(
        VerificationReport.compare("median_mean_gap", abs(F.mean() - m), 8.0 * scale, 1e-12)
    )
    logger.debug(f"corollary[{mode.value}] median={m:.6g} checked {len(r_grid)} radii")
    return reports


def binary_cube(n: int) -> ProductSpace:
    """Uniform {0,1}^n"""
    return ProductSpace.power(FiniteSpace.uniform((0, 1)), n)


def normalized_count(n: int) -> FieldFunction:
    """(1/√n) #{i: x_i = 1} on uniform {0,1}^n, 1-Lipschitz for the weighted Hamming distances"""
    space = binary_cube(n)
    return FieldFunction(space, space.index_grid().sum(axis=1) / math.sqrt(n))


def bernoulli_norm_check(
    vectors: np.ndarray, r_grid: Sequence[float]
) -> List[VerificationReport]:
    """
    ‖Σ ε_i v_i‖ for independent fair ε_i ∈ {0,1}, a convex σ-Lipschitz function
    of ε ∈ [0,1]^n with σ² the top eigenvalue of Σ v_i v_iᵀ.
    """
    vectors = np.asarray(vectors, dtype=float)
    n = vectors.shape[0]
    space = binary_cube(n)
    grid = space.index_grid().astype(float)
    sums = grid @ vectors
    values = np.linalg.norm(sums, axis=1)
    sigma = math.sqrt(float(np.linalg.eigvalsh(vectors.T @ vectors)[-1]))
    # subgradient of u ↦ ‖uᵀV‖ is V w/‖w‖ with w = uᵀV (0 at w = 0)
    with np.errstate(invalid="ignore", divide="ignore"):
        directions = np.where(values[:, None] > 0, sums / values[:, None], 0.0)
    subgradients = directions @ vectors.T
    return corollary_concentration(
        FieldFunction(space, values),
        CorollaryMode.CONVEX_LIPSCHITZ,
        r_grid,
        scale=sigma,
        certificates=subgradients,
    )
