"""Biased cube: Dirichlet form, semigroup and the functional inequalities"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import DomainError, PreconditionError, SizeLimitError
from src.core.random import lab_rng
from src.cube import (
    BiasedCube,
    CubeFunction,
    DirichletRepresentation,
    coordinate_generator,
    dirichlet_convexity_check,
    dirichlet_form,
    gross_convexity_check,
    gross_flow_check,
    hypercontractive_time,
    hypercontractivity_check,
    hypercontractivity_violation_probe,
    l2_decay_check,
    lsi_check,
    poincare_check,
    semigroup_apply,
    semigroup_series,
)

cube_params = st.tuples(
    st.integers(min_value=1, max_value=5),
    st.sampled_from([0.1, 0.3, 0.5, 0.7, 0.9]),
    st.integers(min_value=0, max_value=2**32),
)


def random_function(n: int, p: float, seed: int) -> CubeFunction:
    cube = BiasedCube(n, p)
    return CubeFunction(cube, lab_rng(seed, 0).normal(size=cube.size))


def test_points_are_lexicographic_signs():
    cube = BiasedCube(2, 0.3)
    assert cube.points.tolist() == [[-1, -1], [-1, 1], [1, -1], [1, 1]]
    assert cube.weights == pytest.approx([0.49, 0.21, 0.21, 0.09])


def test_rho_is_one_half_on_the_symmetric_cube():
    assert BiasedCube(3, 0.5).rho == 0.5
    biased = BiasedCube(1, 0.9)
    assert biased.rho == pytest.approx(0.8 / math.log(9))


def test_invalid_cubes_are_rejected():
    with pytest.raises(DomainError):
        BiasedCube(2, 1.0)
    with pytest.raises(DomainError):
        BiasedCube(0, 0.5)
    with pytest.raises(SizeLimitError):
        BiasedCube(21, 0.5)


def test_lsi_on_the_indicator(indicator):
    report = lsi_check(indicator)
    assert report.passed
    assert report.lhs == pytest.approx(math.log(2) / 2, rel=1e-12)
    assert report.rhs == pytest.approx(0.5, rel=1e-12)


def test_poincare_is_tight_on_one_coordinate(indicator):
    report = poincare_check(indicator)
    assert report.passed
    assert report.lhs == pytest.approx(report.rhs, rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(params=cube_params)
def test_dirichlet_representations_agree(params):
    f = random_function(*params)
    g = random_function(params[0], params[1], params[2] + 1)
    values = [dirichlet_form(f, g, rep) for rep in DirichletRepresentation]
    assert max(values) - min(values) <= 1e-11 * max(1.0, max(abs(v) for v in values))


@settings(max_examples=30, deadline=None)
@given(params=cube_params)
def test_lsi_and_poincare_hold(params):
    f = random_function(*params)
    assert lsi_check(f).passed
    assert poincare_check(f).passed


@pytest.mark.parametrize("t", [0.0, 0.5, 2.0])
def test_semigroup_matches_series(t):
    f = random_function(3, 0.3, 5)
    exact = semigroup_apply(f, t)
    series = semigroup_series(f, t)
    np.testing.assert_allclose(exact.values, series.values, atol=1e-9)


def test_semigroup_on_a_coordinate():
    cube = BiasedCube(1, 0.5)
    x = CubeFunction.coordinate(cube, 0)
    np.testing.assert_allclose(semigroup_apply(x, 1.0).values, math.exp(-1.0) * x.values)


def test_semigroup_preserves_the_mean():
    f = random_function(4, 0.7, 9)
    assert semigroup_apply(f, 1.3).mean() == pytest.approx(f.mean(), rel=1e-12)


def test_negative_time_is_rejected(indicator):
    with pytest.raises(DomainError):
        semigroup_apply(indicator, -0.1)


def test_hypercontractive_threshold():
    assert hypercontractive_time(BiasedCube(1, 0.5), 2, 4) == pytest.approx(math.log(3) / 2)
    with pytest.raises(DomainError):
        hypercontractive_time(BiasedCube(1, 0.5), 4, 2)


def test_hypercontractivity_at_the_threshold():
    cube = BiasedCube(1, 0.5)
    f = 1 + CubeFunction.coordinate(cube, 0)
    report = hypercontractivity_check(f, 2, 4, math.log(3) / 2)
    assert report.passed
    assert report.lhs == pytest.approx((28 / 9) ** 0.25, rel=1e-10)
    assert report.rhs == pytest.approx(math.sqrt(2), rel=1e-12)


def test_hypercontractivity_refuses_sub_threshold_times():
    f = random_function(2, 0.5, 1)
    with pytest.raises(PreconditionError):
        hypercontractivity_check(f, 2, 4, 0.1)


def test_violation_harness_finds_a_failure():
    cube = BiasedCube(1, 0.5)
    f = 1 + CubeFunction.coordinate(cube, 0)
    threshold = hypercontractive_time(cube, 2, 4)
    report = hypercontractivity_violation_probe(f, 2, 4, [0.0, threshold / 4, threshold / 2])
    assert report.passed
    assert report.details["violations"] >= 1
    # at t = 0 the norms are ‖f‖₄ = 8^{1/4} against ‖f‖₂ = √2
    assert report.lhs == pytest.approx(math.sqrt(2) - 8**0.25, abs=1e-8)


def test_violation_harness_needs_a_sub_threshold_time():
    cube = BiasedCube(1, 0.5)
    f = 1 + CubeFunction.coordinate(cube, 0)
    with pytest.raises(PreconditionError):
        hypercontractivity_violation_probe(f, 2, 4, [10.0])


@settings(max_examples=50, deadline=None)
@given(
    u=st.floats(min_value=0, max_value=5),
    v=st.floats(min_value=0, max_value=5),
    q=st.floats(min_value=1.1, max_value=6),
)
def test_gross_convexity_inequality(u, v, q):
    assert gross_convexity_check(u, v, q).passed


@pytest.mark.parametrize("p", [0.2, 0.5])
def test_flow_decay_and_convexity(p):
    f = random_function(3, p, 21).map(np.abs)
    assert all(r.passed for r in gross_flow_check(f, 2.0, [0, 0.1, 0.3, 0.7, 1.5]))
    assert all(r.passed for r in l2_decay_check(f, [0.1, 0.5, 1.0, 3.0]))
    assert dirichlet_convexity_check(f, 3.0).passed


def test_flow_requires_nonnegative_functions():
    f = random_function(2, 0.5, 3) - 10.0
    with pytest.raises(PreconditionError):
        gross_flow_check(f, 2.0, [0.0, 1.0])


@settings(max_examples=20, deadline=None)
@given(params=cube_params)
def test_semigroup_property(params):
    f = random_function(*params)
    for s in (0.1, 0.5, 1.0):
        for t in (0.1, 0.5, 1.0):
            np.testing.assert_allclose(
                semigroup_apply(semigroup_apply(f, t), s).values,
                semigroup_apply(f, s + t).values,
                atol=1e-10,
            )


@settings(max_examples=20, deadline=None)
@given(params=cube_params, t=st.floats(min_value=0.0, max_value=3.0))
def test_semigroup_is_self_adjoint_and_invariant(params, t):
    n, p, seed = params
    f = random_function(n, p, seed)
    g = random_function(n, p, seed + 1)
    assert f.inner(semigroup_apply(g, t)) == pytest.approx(
        g.inner(semigroup_apply(f, t)), abs=1e-11
    )
    assert semigroup_apply(f, t).mean() == pytest.approx(f.mean(), abs=1e-11)


@settings(max_examples=20, deadline=None)
@given(params=cube_params, t=st.floats(min_value=0.0, max_value=3.0))
def test_coordinate_generators_commute_with_the_semigroup(params, t):
    f = random_function(*params)
    for i in range(f.cube.n):
        np.testing.assert_allclose(
            coordinate_generator(semigroup_apply(f, t), i).values,
            semigroup_apply(coordinate_generator(f, i), t).values,
            atol=1e-10,
        )
