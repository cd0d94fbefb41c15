"""Smooth test functions with exact derivatives and a Lipschitz bound"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..core.errors import DomainError, PreconditionError
from .quadrature import QuadratureRule

Vectorized = Callable[[np.ndarray], np.ndarray]

FD_STEP = 1e-5
FD_RELATIVE = 1e-6


@dataclass(frozen=True)
class SmoothTestFunction:
    """F with F′ and a bound on sup |F′| (math.inf when unbounded)"""

    name: str
    evaluator: Vectorized
    derivative: Vectorized
    lipschitz_bound: float

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self.evaluator(np.asarray(x, dtype=float)), dtype=float)

    def grad(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self.derivative(np.asarray(x, dtype=float)), dtype=float)

    def validate(self, rule: QuadratureRule) -> None:
        """
        Node-sampled checks: |F′| ≤ bound and F′ against centered differences.

        Raises:
            PreconditionError: with the offending node as witness
        """
        x = rule.nodes
        slope = self.grad(x)
        too_steep = np.abs(slope) > self.lipschitz_bound * (1 + 1e-12) + 1e-12
        if np.any(too_steep):
            node = float(x[np.argmax(too_steep)])
            raise PreconditionError(f"{self.name}: |F'| exceeds its bound", witness=f"x={node}")
        fd = (self(x + FD_STEP) - self(x - FD_STEP)) / (2 * FD_STEP)
        off = np.abs(fd - slope) > FD_RELATIVE * np.maximum(1.0, np.abs(slope))
        if np.any(off):
            node = float(x[np.argmax(off)])
            raise PreconditionError(
                f"{self.name}: derivative disagrees with finite differences", witness=f"x={node}"
            )


def constant(c: float) -> SmoothTestFunction:
    return SmoothTestFunction(
        f"constant({c})", lambda x: np.full_like(x, c), lambda x: np.zeros_like(x), 0.0
    )


def linear(slope: float = 1.0, intercept: float = 0.0) -> SmoothTestFunction:
    return SmoothTestFunction(
        f"linear({slope},{intercept})",
        lambda x: slope * x + intercept,
        lambda x: np.full_like(x, slope),
        abs(slope),
    )


def square() -> SmoothTestFunction:
    return SmoothTestFunction("square", lambda x: x**2, lambda x: 2 * x, np.inf)


def half_exponential(b: float) -> SmoothTestFunction:
    """e^{bx/2}, the LSI extremal"""
    return SmoothTestFunction(
        f"exp({b}x/2)",
        lambda x: np.exp(b * x / 2),
        lambda x: (b / 2) * np.exp(b * x / 2),
        np.inf,
    )


def shift_density(b: float) -> SmoothTestFunction:
    """e^{bx - b²/2}: density of N(b, 1) with respect to γ"""
    return SmoothTestFunction(
        f"shift({b})",
        lambda x: np.exp(b * x - b**2 / 2),
        lambda x: b * np.exp(b * x - b**2 / 2),
        np.inf,
    )


def smoothed_abs(eps: float = 1e-3) -> SmoothTestFunction:
    if eps <= 0:
        raise DomainError("eps must be positive")
    return SmoothTestFunction(
        f"smoothed_abs({eps})",
        lambda x: np.sqrt(x**2 + eps**2),
        lambda x: x / np.sqrt(x**2 + eps**2),
        1.0,
    )


def random_lipschitz(
    rng: np.random.Generator, lipschitz: float = 1.0, terms: int = 4
) -> SmoothTestFunction:
    """
    Σ a_k sin(ω_k x + φ_k) + c tanh(β x) + s x,
    rescaled so Σ|a_k|ω_k + |c|β + |s| = lipschitz.
    """
    amplitudes = rng.normal(size=terms)
    frequencies = rng.uniform(0.2, 3.0, size=terms)
    phases = rng.uniform(0.0, 2 * np.pi, size=terms)
    c, beta, s = rng.normal(), rng.uniform(0.5, 2.0), rng.normal()
    total = float(np.sum(np.abs(amplitudes) * frequencies) + abs(c) * beta + abs(s))
    scale = lipschitz / total
    a, c, s = amplitudes * scale, c * scale, s * scale

    def value(x: np.ndarray) -> np.ndarray:
        waves = np.sin(np.multiply.outer(x, frequencies) + phases) @ a
        return waves + c * np.tanh(beta * x) + s * x

    def slope(x: np.ndarray) -> np.ndarray:
        waves = np.cos(np.multiply.outer(x, frequencies) + phases) @ (a * frequencies)
        return waves + c * beta / np.cosh(beta * x) ** 2 + s

    return SmoothTestFunction(f"random_lipschitz({lipschitz:.3f})", value, slope, lipschitz)


def random_positive_density(rng: np.random.Generator, rule: QuadratureRule) -> SmoothTestFunction:
    """exp(F) / ∫ exp(F) dγ for a random Lipschitz F"""
    exponent = random_lipschitz(rng, lipschitz=float(rng.uniform(0.2, 1.5)))
    mass = rule.integrate(lambda x: np.exp(exponent(x)))
    return SmoothTestFunction(
        f"density[{exponent.name}]",
        lambda x: np.exp(exponent(x)) / mass,
        lambda x: exponent.grad(x) * np.exp(exponent(x)) / mass,
        np.inf,
    )
