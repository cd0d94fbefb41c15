"""Suprema of empirical processes: laws, Poisson, Bernstein and Talagrand tails"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import DomainError, PreconditionError, SizeLimitError
from src.core.random import lab_rng
from src.empirical import (
    LawMode,
    ProcessInstance,
    bernstein_bound,
    bernstein_tail_check,
    poisson_h,
    poisson_mgf_check,
    poisson_tail_check,
    random_instance,
    sign_instance,
    supremum_law,
    symmetrization_v_bound,
    talagrand_bound,
    talagrand_tail_check,
    truncation_tail_check,
)
from src.measure import FiniteSpace
from src.suites.empirical import binomial_instance

RADII = [0.5, 1.0, 2.0, 4.0]


def test_law_of_a_symmetric_sign_sum():
    stats = supremum_law(sign_instance(2, symmetric=True))
    assert stats.mean_z == pytest.approx(1.0)
    assert stats.v == pytest.approx(2.0)
    assert stats.tail(1.0) == pytest.approx(1.0)
    assert not stats.statistical


def test_symmetrization_on_signs():
    report = symmetrization_v_bound(sign_instance(2, symmetric=True))
    assert report.name == "symmetrization_v"
    assert report.passed
    assert report.lhs == pytest.approx(2.0)
    assert report.rhs == pytest.approx(17.0)


def test_symmetrization_needs_a_symmetric_family():
    with pytest.raises(PreconditionError):
        symmetrization_v_bound(sign_instance(2))


def test_poisson_tail_of_a_binomial():
    inst = binomial_instance(3)
    (report,) = poisson_tail_check(inst, [1.5])
    assert report.passed
    assert report.lhs == pytest.approx(1 / 8)
    assert report.rhs == pytest.approx(math.exp(-1.5 * poisson_h(1.0)))


def test_poisson_mgf_of_a_binomial():
    reports = poisson_mgf_check(binomial_instance(3), [0.0, 0.5, 1.0, 4.0])
    assert all(r.passed for r in reports)
    assert reports[2].lhs == pytest.approx(((1 + math.e) / 2) ** 3)


def test_poisson_bounds_need_nonnegative_functions():
    with pytest.raises(PreconditionError):
        poisson_mgf_check(sign_instance(3), [1.0])
    with pytest.raises(PreconditionError):
        poisson_tail_check(sign_instance(3), [1.0])


def test_poisson_mgf_rejects_negative_lambda():
    with pytest.raises(DomainError):
        poisson_mgf_check(binomial_instance(2), [-1.0])


def test_bound_edge_cases():
    assert bernstein_bound(0.0, 1.0) == 2.0
    assert bernstein_bound(0.0, 0.0) == 2.0
    assert bernstein_bound(1.0, 0.0) == pytest.approx(2 * math.exp(-1 / 16))
    assert talagrand_bound(0.0, 1.0) == 3.0
    assert talagrand_bound(1.0, 0.0) == 0.0


def test_exact_cap():
    with pytest.raises(SizeLimitError):
        supremum_law(sign_instance(21))


def test_family_must_lie_in_the_unit_interval():
    space = FiniteSpace.uniform((0, 1))
    with pytest.raises(DomainError):
        ProcessInstance((space,), (np.array([[0.0, 2.0]]),))
    normalized = ProcessInstance.normalize([space], [np.array([[0.0, 2.0]])])
    assert normalized.scale == 2.0
    assert normalized.tables[0].max() == 1.0


def test_radii_are_read_in_original_units():
    space = FiniteSpace.uniform((0, 1))
    inst = ProcessInstance.normalize([space] * 3, [np.array([[0.0, 2.0]])] * 3)
    (scaled,) = bernstein_tail_check(inst, [2.0])
    (unit,) = bernstein_tail_check(binomial_instance(3), [1.0])
    assert scaled.lhs == unit.lhs
    assert scaled.rhs == unit.rhs


@settings(max_examples=25, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32),
    n=st.integers(min_value=1, max_value=8),
    N=st.integers(min_value=1, max_value=6),
    kind=st.sampled_from(["signed", "nonnegative", "symmetric"]),
)
def test_exact_tail_bounds(seed, n, N, kind):
    inst = random_instance(
        lab_rng(seed, 0),
        n,
        N,
        nonnegative=kind == "nonnegative",
        symmetric=kind == "symmetric",
    )
    stats = supremum_law(inst)
    radii = [c * inst.scale for c in RADII]
    assert all(r.passed for r in bernstein_tail_check(inst, radii, stats))
    assert all(r.passed for r in talagrand_tail_check(inst, radii, stats))
    assert all(r.passed for r in truncation_tail_check(inst, radii))
    if kind == "nonnegative":
        assert all(r.passed for r in poisson_mgf_check(inst, [0.25, 1.0, 4.0], stats))
        assert all(r.passed for r in poisson_tail_check(inst, radii, stats))
    if kind == "symmetric":
        assert symmetrization_v_bound(inst, stats).passed


@pytest.mark.parametrize("N", [1, 2, 3, 6, 7])
def test_symmetric_families_have_the_requested_size(N):
    inst = random_instance(lab_rng(5, 0), 3, N, symmetric=True)
    assert inst.N == N
    assert inst.is_symmetric() and inst.is_centered()
    assert symmetrization_v_bound(inst).passed


def test_monte_carlo_agrees_with_enumeration():
    inst = random_instance(lab_rng(17, 0), 6, 4)
    exact = supremum_law(inst)
    sampled = supremum_law(inst, LawMode.MONTE_CARLO, samples=20_000, seed=17)
    assert sampled.statistical
    spread = float(np.std(sampled.z)) / math.sqrt(20_000)
    assert abs(sampled.mean_z - exact.mean_z) <= 4 * spread + 1e-9


def test_monte_carlo_is_seeded():
    inst = sign_instance(24, symmetric=True)
    first = supremum_law(inst, LawMode.MONTE_CARLO, samples=5_000, seed=2)
    second = supremum_law(inst, LawMode.MONTE_CARLO, samples=5_000, seed=2)
    np.testing.assert_array_equal(first.z, second.z)
    reports = bernstein_tail_check(inst, [4.0, 8.0, 16.0], first)
    assert all(r.passed and r.details["statistical"] for r in reports)


def test_monte_carlo_needs_samples():
    with pytest.raises(DomainError):
        supremum_law(sign_instance(2), LawMode.MONTE_CARLO, samples=0)
