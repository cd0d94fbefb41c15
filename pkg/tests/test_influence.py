"""Influences, KKL and the L1-L2 variance inequality"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import DomainError, PreconditionError
from src.core.random import lab_rng
from src.cube import BiasedCube, CubeFunction
from src.influence import (
    L1L2Form,
    coordinate_norms,
    default_constant,
    delta_operator_bridge,
    dictator,
    influences,
    kkl_check,
    l1l2_bound,
    l1l2_reports,
    majority,
    parity,
    random_monotone,
    tribes,
    variance_representation_check,
)


def test_dictator_influences():
    cube = BiasedCube(4, 0.5)
    profile = influences(dictator(cube, 2), cube)
    np.testing.assert_allclose(profile.influences, [0.0, 0.0, 0.5, 0.0])
    assert profile.measure == pytest.approx(0.5)
    assert profile.argmax == 2


def test_parity_influences():
    cube = BiasedCube(3, 0.5)
    profile = influences(parity(cube), cube)
    np.testing.assert_allclose(profile.influences, [0.5, 0.5, 0.5])
    assert profile.total == pytest.approx(1.5)


def test_majority_influences_are_equal():
    cube = BiasedCube(3, 0.5)
    profile = influences(majority(cube), cube)
    # a coordinate is pivotal when the other two disagree
    np.testing.assert_allclose(profile.influences, [0.25, 0.25, 0.25])


def test_kkl_on_the_dictator():
    cube = BiasedCube(4, 0.5)
    total, maximum = kkl_check(dictator(cube), cube)
    assert total.name == "kkl_sum" and total.passed
    assert maximum.name == "kkl_max_influence" and maximum.passed
    assert maximum.lhs == pytest.approx(0.25 * math.log(4) / (8 * 14 * 4), rel=1e-12)
    assert maximum.rhs == pytest.approx(0.5)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_kkl_on_standard_sets(n):
    cube = BiasedCube(n, 0.5)
    sets = [dictator(cube), parity(cube), majority(cube), tribes(cube, 2)]
    sets.append(random_monotone(cube, lab_rng(n, 0)))
    for mask in sets:
        if 0 < mask.mean() < 1:
            assert all(r.passed for r in kkl_check(mask, cube))


def test_kkl_preconditions():
    biased = BiasedCube(3, 0.3)
    with pytest.raises(PreconditionError):
        kkl_check(dictator(biased), biased)
    cube = BiasedCube(3, 0.5)
    with pytest.raises(DomainError):
        kkl_check(np.ones(cube.size, dtype=bool), cube)
    with pytest.raises(DomainError):
        kkl_check(np.ones(5, dtype=bool), cube)


def test_majority_needs_odd_dimension():
    with pytest.raises(DomainError):
        majority(BiasedCube(4, 0.5))


def test_default_constants():
    assert default_constant(BiasedCube(2, 0.5)) == 14.0
    assert default_constant(BiasedCube(2, 0.2)) == 30.0


def test_l1l2_on_a_coordinate():
    f = CubeFunction.coordinate(BiasedCube(1, 0.5), 0)
    norms = coordinate_norms(f)
    np.testing.assert_allclose(norms.l1, [1.0])
    np.testing.assert_allclose(norms.ratio_log, [0.0], atol=1e-15)

    semigroup = l1l2_bound(f, L1L2Form.SEMIGROUP)
    assert semigroup.passed
    assert semigroup.lhs == pytest.approx(1.0)
    assert semigroup.rhs == pytest.approx(4 * math.e**2, rel=1e-12)

    original = l1l2_bound(f, L1L2Form.ORIGINAL)
    assert original.rhs == pytest.approx(14 * math.log(8), rel=1e-12)

    integral = l1l2_bound(f, L1L2Form.INTEGRAL)
    assert integral.rhs == pytest.approx(2 * math.e**2, rel=1e-9)


def test_l1l2_of_a_constant_is_trivial():
    f = CubeFunction.constant(BiasedCube(3, 0.3), 2.0)
    for report in l1l2_reports(f):
        assert report.passed
        assert report.lhs == pytest.approx(0.0, abs=1e-12)
        assert report.rhs == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=20, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32),
    n=st.integers(min_value=1, max_value=6),
    p=st.sampled_from([0.1, 0.25, 0.5, 0.75, 0.9]),
)
def test_l1l2_forms_hold(seed, n, p):
    rng = lab_rng(seed, 0)
    cube = BiasedCube(n, p)
    values = rng.normal(size=cube.size)
    values[rng.random(cube.size) < 0.5] = 0.0
    f = CubeFunction(cube, values)
    reports = l1l2_reports(f)
    assert [r.name for r in reports] == [f"l1l2_{form.value}" for form in L1L2Form]
    assert all(r.passed for r in reports)


@pytest.mark.parametrize("p", [0.2, 0.5])
def test_delta_operator_bridge(p):
    cube = BiasedCube(3, p)
    f = CubeFunction(cube, lab_rng(2, 0).normal(size=cube.size))
    for i in range(cube.n):
        assert delta_operator_bridge(f, i).passed


def test_variance_representations():
    cube = BiasedCube(3, 0.3)
    f = CubeFunction(cube, lab_rng(7, 0).normal(size=cube.size))
    reports = variance_representation_check(f)
    assert [r.name for r in reports] == [
        "variance_representation",
        "unit_time_representation",
        "unit_time_variance",
    ]
    assert all(r.passed for r in reports)
