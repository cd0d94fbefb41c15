"""Entropy toolbox on finite product spaces"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import DomainError
from src.core.random import lab_rng
from src.measure import (
    FieldFunction,
    FiniteSpace,
    ProductSpace,
    TensorizationVariant,
    entropy,
    entropy_duality_gap,
    tensorization_bound,
    variance,
    variational_entropy,
    variational_equality_check,
    variational_formula_check,
)
from src.suites.entropy import random_product_function


def test_entropy_of_two_point_function():
    space = FiniteSpace.uniform((0, 1))
    f = FieldFunction(space, [0.0, 2.0])
    assert entropy(f) == pytest.approx(math.log(2), abs=1e-15)


def test_entropy_of_constant_is_zero():
    space = FiniteSpace.uniform((0, 1, 2))
    assert entropy(FieldFunction(space, [3.0, 3.0, 3.0])) == pytest.approx(0.0, abs=1e-15)


def test_entropy_rejects_negative_values():
    space = FiniteSpace.uniform((0, 1))
    with pytest.raises(DomainError):
        entropy(FieldFunction(space, [-1.0, 2.0]))


def test_weights_must_sum_to_one():
    with pytest.raises(DomainError):
        FiniteSpace((0, 1), [0.5, 0.6])


def test_weights_within_slack_are_normalized():
    space = FiniteSpace((0, 1), [0.5, 0.5 + 1e-12])
    assert space.weights.sum() == pytest.approx(1.0, abs=1e-15)


def test_product_space_enumeration():
    space = ProductSpace.power(FiniteSpace.two_point(0.25, points=(0, 1)), 2)
    assert space.cardinality == 4
    assert space.weights.sum() == pytest.approx(1.0)
    assert space.index_of((1, 1)) == 3
    assert space.weights[3] == pytest.approx(1 / 16)


def test_variance_of_sign():
    space = FiniteSpace.uniform((-1, 1))
    assert variance(FieldFunction(space, [-1.0, 1.0])) == pytest.approx(1.0)


def test_variational_entropy_minimized_at_mean():
    space = FiniteSpace((0, 1, 2), [0.2, 0.3, 0.5])
    f = FieldFunction(space, [0.5, 1.0, 4.0])
    mean = f.mean()
    assert variational_entropy(f, mean) == pytest.approx(entropy(f), rel=1e-12)
    assert variational_entropy(f, 2 * mean) > entropy(f)
    report = variational_formula_check(f, [mean * s for s in (0.5, 1.0, 2.0)])
    assert report.passed


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32), positive=st.booleans())
def test_variational_forms_are_attained(seed, positive):
    f = random_product_function(lab_rng(seed, 2), 3, positive=positive)
    minimizer, maximizer = variational_equality_check(f)
    assert minimizer.name == "variational_minimizer" and minimizer.passed
    assert maximizer.name == "entropy_dual_maximizer" and maximizer.passed
    assert minimizer.details["c"] == pytest.approx(f.mean())


def test_dual_maximizer_on_a_two_point_space():
    space = FiniteSpace.uniform((0, 1))
    f = FieldFunction(space, [0.0, 2.0])
    _, maximizer = variational_equality_check(f)
    assert maximizer.passed
    assert entropy(f) == pytest.approx(math.log(2))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32), n=st.integers(min_value=1, max_value=5))
def test_tensorization_variants_hold(seed, n):
    f = random_product_function(lab_rng(seed, 1), n, positive=seed % 2 == 0)
    for variant in TensorizationVariant:
        report = tensorization_bound(f, variant)
        assert report.passed, report


def test_symmetrized_bound_dominates_plain_tensorization():
    f = random_product_function(lab_rng(3, 1), 3, positive=True)
    plain = tensorization_bound(f, TensorizationVariant.ENTROPY)
    symmetrized = tensorization_bound(f, TensorizationVariant.SYMMETRIZED)
    assert symmetrized.rhs >= plain.rhs - 1e-10


def test_duality_gap_vanishes_for_positive_functions():
    space = ProductSpace.power(FiniteSpace.uniform((0, 1)), 3)
    values = np.exp(lab_rng(11, 0).normal(size=space.cardinality))
    f = FieldFunction(space, values)
    gap = entropy_duality_gap(f)
    assert -1e-12 <= gap <= 1e-9 * max(1.0, entropy(f))


@pytest.mark.parametrize("c", [0.5, 2.0, 10.0])
def test_entropy_is_homogeneous(c):
    f = random_product_function(lab_rng(5, 2), 2, positive=True)
    assert entropy(f * c) == pytest.approx(c * entropy(f), rel=1e-10)
