"""Convex distance: min-norm hulls, moment bounds, dual identity, corollaries"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import DomainError, PreconditionError, SizeLimitError
from src.core.random import lab_rng
from src.convex import (
    CorollaryMode,
    DualMethod,
    HullInstance,
    PatternSet,
    bernoulli_norm_check,
    binary_cube,
    build_hull,
    convex_distance,
    convex_distance_chain,
    convex_distance_moment,
    corollary_concentration,
    dual_distance,
    dual_identity_check,
    median,
    min_norm_point,
    normalized_count,
    sphere_grid,
    square_lipschitz_check,
)
from src.suites.convex import random_pattern_set


@pytest.fixture
def antidiagonal() -> PatternSet:
    return PatternSet.from_tuples(binary_cube(2), [(0, 1), (1, 0)])


def test_distances_to_the_antidiagonal(antidiagonal):
    np.testing.assert_allclose(
        convex_distance(antidiagonal), [1 / math.sqrt(2), 0.0, 0.0, 1 / math.sqrt(2)], atol=1e-12
    )


def test_dual_distance_attains_the_hull_distance(antidiagonal):
    assert dual_distance(antidiagonal, 3) == pytest.approx(1 / math.sqrt(2), rel=1e-10)
    assert dual_distance(antidiagonal, 1) == 0.0


def test_distance_to_a_single_point():
    A = PatternSet.from_tuples(binary_cube(2), [(0, 0)])
    np.testing.assert_allclose(convex_distance(A), [0.0, 1.0, 1.0, math.sqrt(2)], atol=1e-12)
    report = convex_distance_moment(A, 1 / 4)
    assert report.passed
    expected = (1 + 2 * math.exp(0.25) + math.exp(0.5)) / 4
    assert report.lhs == pytest.approx(expected, rel=1e-10)
    assert report.rhs == pytest.approx(4.0)


def test_min_norm_point_of_a_hull():
    hull = HullInstance(np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]))
    result = min_norm_point(hull)
    np.testing.assert_allclose(result.point, [0.5, 0.5], atol=1e-10)
    assert result.certificate_gap(hull) >= -1e-10


def test_hull_with_origin_has_zero_distance():
    hull = HullInstance(np.array([[0.0, 0.0, 0.0], [1.0, 1.0, 0.0]]))
    assert hull.has_origin()
    assert min_norm_point(hull).distance == 0.0


def test_hull_rejects_non_binary_vertices():
    with pytest.raises(DomainError):
        HullInstance(np.array([[0.5, 1.0]]))


def test_build_hull_patterns(antidiagonal):
    hull = build_hull(antidiagonal, 0)
    assert hull.vertices.tolist() == [[0.0, 1.0], [1.0, 0.0]]


def test_empty_set_is_rejected():
    with pytest.raises(DomainError):
        PatternSet(binary_cube(2), ())


def test_enumeration_cap():
    with pytest.raises(SizeLimitError):
        convex_distance(PatternSet(binary_cube(15), (0,)))


def test_moment_constant_must_be_supported(antidiagonal):
    with pytest.raises(PreconditionError):
        convex_distance_moment(antidiagonal, 0.3)


@settings(max_examples=15, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32),
    n=st.integers(min_value=1, max_value=5),
    uniform=st.booleans(),
)
def test_convex_distance_inequalities(seed, n, uniform):
    A = random_pattern_set(lab_rng(seed, 0), n, uniform)
    d = convex_distance(A)
    assert np.all(d[list(A.members)] == 0.0)
    for c in (1 / 4, 1 / 14):
        assert convex_distance_moment(A, c, d).passed
    assert dual_identity_check(A, d).passed
    assert square_lipschitz_check(A, d).passed
    assert all(r.passed for r in convex_distance_chain(A, d))


def test_sphere_grid_only_lower_bounds():
    A = random_pattern_set(lab_rng(6, 0), 4, uniform=True)
    d = convex_distance(A)
    for x in range(0, A.base.cardinality, 5):
        assert dual_distance(A, x, DualMethod.SPHERE_GRID) <= d[x] + 1e-9


def test_median_is_the_smallest_half_point():
    F = normalized_count(2)
    assert median(F) == pytest.approx(1 / math.sqrt(2))


def test_weighted_hamming_corollary_on_the_count():
    reports = corollary_concentration(
        normalized_count(4), CorollaryMode.WEIGHTED_HAMMING, [0.0, 0.5, 1.0, 2.0, 3.0]
    )
    assert [r.name for r in reports][-1] == "median_mean_gap"
    assert all(r.passed for r in reports)
    assert reports[0].lhs == pytest.approx(1.0)


def test_certified_corollary_on_a_larger_cube():
    n = 10
    F = normalized_count(n)
    certificates = np.full((F.space.cardinality, n), 1 / math.sqrt(n))
    reports = corollary_concentration(
        F, CorollaryMode.WEIGHTED_HAMMING, [0.5, 1.0, 2.0], certificates=certificates
    )
    assert all(r.passed for r in reports)


def test_corollary_rejects_a_steep_function():
    with pytest.raises(PreconditionError):
        corollary_concentration(normalized_count(3) * 2.0, CorollaryMode.WEIGHTED_HAMMING, [1.0])


def test_bernoulli_norm_concentration():
    vectors = lab_rng(10, 0).normal(size=(6, 3))
    reports = bernoulli_norm_check(vectors, [0.0, 0.5, 1.0, 2.0, 4.0])
    assert all(r.passed for r in reports)


@pytest.mark.parametrize("n", range(1, 9))
def test_sphere_grid_rows_are_unit_orthant_vectors(n):
    grid = sphere_grid(n)
    assert grid.shape[1] == n
    assert np.all(np.isfinite(grid)) and np.all(grid >= 0.0)
    np.testing.assert_allclose(np.linalg.norm(grid, axis=1), 1.0, atol=1e-12)


def test_sphere_grid_on_a_line():
    assert sphere_grid(1).tolist() == [[1.0]]
    A = PatternSet.from_tuples(binary_cube(1), [(0,)])
    assert dual_distance(A, 1, DualMethod.SPHERE_GRID) == 1.0
    assert dual_distance(A, 0, DualMethod.SPHERE_GRID) == 0.0


@settings(max_examples=15, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32),
    n=st.integers(min_value=1, max_value=5),
)
def test_distance_shrinks_as_the_set_grows(seed, n):
    rng = lab_rng(seed, 0)
    A = random_pattern_set(rng, n, uniform=True)
    extra = np.flatnonzero(rng.random(A.base.cardinality) < 0.3)
    B = PatternSet(A.base, A.members + tuple(int(m) for m in extra))
    assert A.is_subset_of(B)
    assert np.all(convex_distance(B) <= convex_distance(A) + 1e-9)
