"""Ornstein-Uhlenbeck semigroup evaluated by quadrature"""

import math
from typing import Optional

import numpy as np

from ..core.errors import DomainError
from ..core.report import VerificationReport
from .functions import FD_STEP, SmoothTestFunction, Vectorized
from .quadrature import QuadratureRule


def ou_kernel_apply(
    fn: Vectorized, t: float, rule: QuadratureRule, points: Optional[np.ndarray] = None
) -> np.ndarray:
    """P_t fn(x) = ∫ fn(e^{-t} x + √(1 - e^{-2t}) y) dγ(y), y integrated by the rule"""
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    x = rule.nodes if points is None else np.asarray(points, dtype=float)
    if t == 0:
        return np.asarray(fn(x), dtype=float)
    decay = math.exp(-t)
    spread = math.sqrt(-math.expm1(-2 * t))
    arguments = decay * x[:, None] + spread * rule.nodes[None, :]
    return np.asarray(fn(arguments), dtype=float) @ rule.weights


def ou_apply(
    f: SmoothTestFunction, t: float, rule: QuadratureRule, points: Optional[np.ndarray] = None
) -> np.ndarray:
    """Table of P_t f on the rule's nodes (or on the given points)"""
    return ou_kernel_apply(f, t, rule, points)


def ou_gradient_check(
    f: SmoothTestFunction, t: float, rule: QuadratureRule, tolerance: float = 1e-6
) -> VerificationReport:
    """
    |∇P_t f| ≤ e^{-t} P_t|f′| at every node, gradient by centered differences.

    Reports the node where the relative excess is largest.
    """
    x = rule.nodes
    gradient = np.abs(
        (ou_apply(f, t, rule, x + FD_STEP) - ou_apply(f, t, rule, x - FD_STEP)) / (2 * FD_STEP)
    )
    bound = math.exp(-t) * ou_kernel_apply(lambda y: np.abs(f.grad(y)), t, rule, x)
    scale = np.maximum(1.0, bound)
    worst = int(np.argmax((gradient - bound) / scale))
    return VerificationReport.compare(
        "ou_gradient_bound",
        float(gradient[worst]),
        float(bound[worst]),
        tolerance * float(scale[worst]),
        witness=f"x={float(x[worst])}",
        t=t,
    )
