"""Generators, Dirichlet forms and the Markov semigroup on the biased cube"""

import math
from enum import Enum

import numpy as np

from ..core.errors import DomainError
from .biased_cube import BiasedCube, CubeFunction, check_same_cube


class DirichletRepresentation(str, Enum):
    GENERATOR = "generator"
    SUM_LI = "sum_Li"
    DUPLICATION = "duplication"
    COVARIANCE = "covariance"


def _check_index(cube: BiasedCube, i: int) -> None:
    if not 0 <= i < cube.n:
        raise DomainError(f"coordinate {i} out of range for n = {cube.n}")


def _conditional_mean(tensor: np.ndarray, cube: BiasedCube, i: int) -> np.ndarray:
    """E_i applied to a value tensor, broadcast back along axis i"""
    mean = np.tensordot(tensor, cube.coordinate_weights, axes=([i], [0]))
    return np.expand_dims(mean, i)


def coordinate_generator(f: CubeFunction, i: int) -> CubeFunction:
    """L_i f = ∫ f dμ_p(x_i) - f"""
    _check_index(f.cube, i)
    tensor = f.tensor()
    return CubeFunction.from_tensor(f.cube, _conditional_mean(tensor, f.cube, i) - tensor)


def generator(f: CubeFunction) -> CubeFunction:
    """L = Σ_i L_i"""
    tensor = f.tensor()
    total = np.zeros_like(tensor)
    for i in range(f.cube.n):
        total += _conditional_mean(tensor, f.cube, i) - tensor
    return CubeFunction.from_tensor(f.cube, total)


def _coordinate_jumps(f: CubeFunction, i: int) -> np.ndarray:
    """f(x_i = +1) - f(x_i = -1) as a tensor over the other coordinates"""
    tensor = f.tensor()
    return np.take(tensor, 1, axis=i) - np.take(tensor, 0, axis=i)


def dirichlet_form(
    f: CubeFunction,
    g: CubeFunction,
    representation: DirichletRepresentation | str = DirichletRepresentation.GENERATOR,
) -> float:
    """
    Dirichlet form E(f, g) of L.

    Args:
        f, g: functions on the same cube
        representation: generator (-∫ f Lg), sum_Li (Σ ∫ L_i f L_i g),
            duplication ((1/2) Σ ∫∫∫ (f_i(x) - f_i(y))(g_i(x) - g_i(y))) or
            covariance (Σ ∫ Cov_{μ_p}(f_i, g_i)); all four agree

    Returns:
        E(f, g)
    """
    check_same_cube(f, g)
    cube = f.cube
    representation = DirichletRepresentation(representation)

    if representation is DirichletRepresentation.GENERATOR:
        return -f.inner(generator(g))

    if representation is DirichletRepresentation.SUM_LI:
        return sum(
            coordinate_generator(f, i).inner(coordinate_generator(g, i)) for i in range(cube.n)
        )

    weights = cube.weight_tensor
    total = 0.0
    for i in range(cube.n):
        rest = np.take(weights, 0, axis=i) + np.take(weights, 1, axis=i)
        if representation is DirichletRepresentation.DUPLICATION:
            # two-point double integral: 2pq (Δf)(Δg), halved
            local = cube.p * cube.q * _coordinate_jumps(f, i) * _coordinate_jumps(g, i)
        else:
            tf, tg = f.tensor(), g.tensor()
            mf = _conditional_mean(tf, cube, i)
            mg = _conditional_mean(tg, cube, i)
            cov = np.tensordot((tf - mf) * (tg - mg), cube.coordinate_weights, axes=([i], [0]))
            local = cov
        total += float(np.sum(rest * local))
    return total


def semigroup_apply(f: CubeFunction, t: float) -> CubeFunction:
    """P_t f = e^{tL} f, one coordinate at a time: e^{-t} h + (1 - e^{-t}) E_i h"""
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    decay = math.exp(-t)
    tensor = f.tensor()
    for i in range(f.cube.n):
        tensor = decay * tensor + (1.0 - decay) * _conditional_mean(tensor, f.cube, i)
    return CubeFunction.from_tensor(f.cube, tensor)


def semigroup_series(f: CubeFunction, t: float, terms: int = 30) -> CubeFunction:
    """Truncated Σ_k t^k L^k f / k!; oracle for semigroup_apply on small cubes"""
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    term = f
    total = f.values.copy()
    for k in range(1, terms):
        term = generator(term) * (t / k)
        total = total + term.values
    return CubeFunction(f.cube, total)
