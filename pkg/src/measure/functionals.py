"""
Entropy and variance functionals, and the tensorization bounds built on them.

All integrals are exact weighted sums over the enumerated space.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.special import logsumexp, xlogy

from ..core.errors import DomainError
from ..core.report import VerificationReport
from .spaces import FieldFunction, FiniteSpace, ProductSpace

DENSITY_SLACK = 1e-12
DUALITY_GRID: Tuple[int, ...] = tuple(2**k for k in range(1, 21))


class TensorizationVariant(str, Enum):
    ENTROPY = "entropy"
    EFRON_STEIN = "efron_stein"
    SYMMETRIZED = "symmetrized"
    VARIATIONAL = "variational"


def _nonnegative_values(f: FieldFunction) -> np.ndarray:
    if np.any(f.values < 0):
        raise DomainError("entropy is only defined for nonnegative functions")
    if not np.any(f.values > 0):
        raise DomainError("entropy of the zero function is undefined here")
    return f.values


def _entropy_of(weights: np.ndarray, values: np.ndarray) -> float:
    # xlogy(0, 0) = 0 implements the 0 log 0 convention
    m = float(weights @ values)
    return max(float(weights @ xlogy(values, values)) - float(xlogy(m, m)), 0.0)


def entropy(f: FieldFunction) -> float:
    """Ent(f) = ∫ f log f - (∫ f) log(∫ f)"""
    return _entropy_of(f.space.weights, _nonnegative_values(f))


def variance(f: FieldFunction) -> float:
    m = f.mean()
    return max(float(f.space.weights @ (f.values - m) ** 2), 0.0)


def duality_gap_trajectory(f: FieldFunction) -> List[Tuple[int, float]]:
    """
    Gap Ent(f) - ∫ f g_N for the clamped maximizers g_N = log(f_N / ∫ f_N),
    f_N = min(max(f, 1/N), N), over the fixed N grid.
    """
    values = _nonnegative_values(f)
    weights = f.space.weights
    ent = _entropy_of(weights, values)
    trajectory = []
    for n in DUALITY_GRID:
        clamped = np.clip(values, 1.0 / n, float(n))
        g = np.log(clamped) - np.log(float(weights @ clamped))
        trajectory.append((n, ent - float(weights @ (values * g))))
    return trajectory


def entropy_duality_gap(f: FieldFunction) -> float:
    """Entropy minus the best dual value reached on the N grid"""
    return min(gap for _, gap in duality_gap_trajectory(f))


def entropic_bound(
    f: FieldFunction, g: FieldFunction, tolerance: float = 1e-12
) -> VerificationReport:
    """∫ f g ≤ ∫ f log f + log ∫ e^g for a density f"""
    if f.space != g.space:
        raise DomainError("f and g live on different spaces")
    values = _nonnegative_values(f)
    weights = f.space.weights
    mass = float(weights @ values)
    if abs(mass - 1.0) > DENSITY_SLACK:
        raise DomainError(f"f is not a density: ∫ f = {mass!r}")
    lhs = float(weights @ (values * g.values))
    log_mgf = float(logsumexp(g.values, b=weights))
    rhs = float(weights @ xlogy(values, values)) + log_mgf
    return VerificationReport.compare(
        "entropic_inequality", lhs, rhs, tolerance * max(1.0, abs(lhs), abs(rhs))
    )


def variational_entropy(f: FieldFunction, c: float) -> float:
    """∫ [f (log f - log c) - (f - c)] dμ, minimized over c > 0 at c = ∫ f"""
    if c <= 0:
        raise DomainError(f"c must be positive, got {c}")
    values = _nonnegative_values(f)
    integrand = xlogy(values, values) - values * np.log(c) - (values - c)
    return float(f.space.weights @ integrand)


def variational_formula_check(
    f: FieldFunction, c_grid: Sequence[float], tolerance: float = 1e-8
) -> VerificationReport:
    """Ent(f) ≤ min over the grid, with equality attained at the mean"""
    ent = entropy(f)
    at_mean = variational_entropy(f, f.mean())
    best = min(variational_entropy(f, c) for c in c_grid)
    return VerificationReport.compare(
        "variational_entropy",
        ent,
        min(best, at_mean),
        tolerance * max(1.0, ent),
        at_mean_gap=at_mean - ent,
    )


def variational_equality_check(
    f: FieldFunction, tolerance: float = 1e-10
) -> List[VerificationReport]:
    """
    Both variational forms of Ent(f) are attained, not just bounded.

    The minimizer c = ∫ f of variational_entropy, and the maximizer g = log(f / ∫ f)
    of ∫ f g over ∫ e^g ≤ 1, each reproduce Ent(f). Zeros of f give g = -∞ there,
    where f g = 0.
    """
    values = _nonnegative_values(f)
    weights = f.space.weights
    ent = _entropy_of(weights, values)
    mass = float(weights @ values)
    dual = float(weights @ xlogy(values, values / mass))
    return [
        VerificationReport.agreement(
            "variational_minimizer", variational_entropy(f, mass), ent, tolerance, c=mass
        ),
        VerificationReport.agreement("entropy_dual_maximizer", dual, ent, tolerance),
    ]


@dataclass(frozen=True)
class ConditionalSlices:
    """Slices f_i of a product function along one coordinate"""

    coordinate: int
    slices: Tuple[FieldFunction, ...]
    weights: np.ndarray  # complement weight of each slice

    def __len__(self) -> int:
        return len(self.slices)


def _product_space(f: FieldFunction) -> ProductSpace:
    if not isinstance(f.space, ProductSpace):
        raise DomainError("a product space is required")
    return f.space


def _check_coordinate(space: ProductSpace, i: int) -> None:
    if not 0 <= i < space.dimension:
        raise DomainError(f"coordinate {i} out of range for dimension {space.dimension}")


def conditional_slices(f: FieldFunction, i: int) -> ConditionalSlices:
    """One FieldFunction on factor i per fixed complement tuple, in lexicographic order"""
    space = _product_space(f)
    _check_coordinate(space, i)
    factor: FiniteSpace = space.factors[i]
    moved = np.moveaxis(f.tensor(), i, -1).reshape(-1, factor.cardinality)
    rest = np.moveaxis(space.weight_tensor, i, -1).sum(axis=-1).reshape(-1)
    return ConditionalSlices(
        coordinate=i,
        slices=tuple(FieldFunction(factor, row) for row in moved),
        weights=rest,
    )


def _along(tensor: np.ndarray, axis: int) -> np.ndarray:
    return np.moveaxis(tensor, axis, -1)


def _conditional_terms(f: FieldFunction, variant: TensorizationVariant) -> np.ndarray:
    """Per-coordinate ∫ (conditional quantity) dP"""
    space = _product_space(f)
    tensor = f.tensor()
    terms = np.zeros(space.dimension)
    for i, factor in enumerate(space.factors):
        w = factor.weights
        slices = _along(tensor, i)
        rest = _along(space.weight_tensor, i).sum(axis=-1)
        means = slices @ w
        if variant is TensorizationVariant.EFRON_STEIN:
            local = (slices**2) @ w - means**2
        elif variant is TensorizationVariant.SYMMETRIZED:
            local = _symmetrized_local(slices, w)
        elif variant is TensorizationVariant.VARIATIONAL:
            local = _variational_local(slices, w, means)
        else:
            local = xlogy(slices, slices) @ w - xlogy(means, means)
        terms[i] = float(np.sum(rest * np.maximum(local, 0.0)))
    return terms


def _symmetrized_local(slices: np.ndarray, w: np.ndarray) -> np.ndarray:
    """(1/2) ∫∫ (f(x) - f(y)) (log f(x) - log f(y)) dμ(x) dμ(y) per slice"""
    diff = slices[..., :, None] - slices[..., None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.log(slices)
        log_diff = logs[..., :, None] - logs[..., None, :]
        product = np.where(diff == 0.0, 0.0, diff * log_diff)
        pair_weights = np.multiply.outer(w, w)
        weighted = np.where(pair_weights > 0, product * pair_weights, 0.0)
    return 0.5 * np.sum(weighted, axis=(-2, -1))


def _variational_local(slices: np.ndarray, w: np.ndarray, means: np.ndarray) -> np.ndarray:
    """∫ [f (log f - log c) - (f - c)] dμ_i with c the slice mean; zero slices contribute 0"""
    c = np.where(means > 0, means, 1.0)[..., None]
    integrand = xlogy(slices, slices) - slices * np.log(c) - (slices - c)
    return np.where(means > 0, integrand @ w, 0.0)


def tensorization_bound(
    f: FieldFunction,
    variant: TensorizationVariant | str = TensorizationVariant.ENTROPY,
    tolerance: float = 1e-10,
) -> VerificationReport:
    """
    Sub-additivity of entropy (or variance) over a product measure.

    Args:
        f: function on a ProductSpace; nonnegative for the entropy variants
        variant: entropy, efron_stein, symmetrized or variational
        tolerance: relative slack, scaled by max(1, |lhs|, |rhs|)

    Returns:
        Report with lhs = Ent_P(f) or Var_P(f) and rhs = Σ_i ∫ (conditional term) dP
    """
    variant = TensorizationVariant(variant)
    _product_space(f)
    if variant is TensorizationVariant.EFRON_STEIN:
        lhs = variance(f)
    else:
        lhs = entropy(f)
    terms = _conditional_terms(f, variant)
    rhs = float(terms.sum())
    scale = max(1.0, abs(lhs), abs(rhs)) if np.isfinite(rhs) else max(1.0, abs(lhs))
    logger.debug(f"tensorization[{variant.value}] lhs={lhs:.6g} rhs={rhs:.6g}")
    return VerificationReport.compare(
        f"tensorization_{variant.value}", lhs, rhs, tolerance * scale
    )
