"""Quadratic transport: simplex, duality, Hopf-Lax and T2"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import DomainError, SizeLimitError
from src.core.random import lab_rng
from src.core.report import SuiteSummary
from src.gauss import gauss_hermite_rule, uniform_gaussian_rule
from src.suites.transport import random_measure
from src.transport import (
    DiscreteMeasure,
    discretized_gaussian,
    gauss_hermite_refinement,
    hamilton_jacobi_residual,
    hopf_lax,
    hopf_lax_exponential_check,
    is_absolutely_continuous,
    kantorovich_duality_check,
    linprog_cost,
    quantile_cost,
    random_lipschitz_density,
    relative_entropy,
    shift_density,
    shift_family,
    t2_check,
    w2,
)


def test_w2_between_diracs():
    assert w2(DiscreteMeasure.dirac(0.0), DiscreteMeasure.dirac(2.0)).distance == pytest.approx(2.0)
    planar = w2(DiscreteMeasure.dirac([0.0, 0.0]), DiscreteMeasure.dirac([1.0, 1.0]))
    assert planar.distance == pytest.approx(math.sqrt(2))
    assert planar.plan.matrix.tolist() == [[1.0]]


def test_w2_of_a_measure_with_itself():
    mu = random_measure(lab_rng(1, 0), 6, 1)
    assert w2(mu, mu).distance == pytest.approx(0.0, abs=1e-7)


@settings(max_examples=20, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32),
    m=st.integers(min_value=1, max_value=12),
    n=st.integers(min_value=1, max_value=12),
    dim=st.sampled_from([1, 2]),
)
def test_simplex_matches_linprog(seed, m, n, dim):
    rng = lab_rng(seed, 0)
    mu, nu = random_measure(rng, m, dim), random_measure(rng, n, dim)
    solution = w2(mu, nu)
    reference = linprog_cost(mu, nu)
    assert solution.plan.cost == pytest.approx(reference, rel=1e-7, abs=1e-9)
    np.testing.assert_allclose(solution.plan.matrix.sum(axis=1), mu.weights, atol=1e-9)
    np.testing.assert_allclose(solution.plan.matrix.sum(axis=0), nu.weights, atol=1e-9)
    assert w2(nu, mu).plan.cost == pytest.approx(solution.plan.cost, rel=1e-7, abs=1e-9)
    if dim == 1:
        assert quantile_cost(mu, nu) == pytest.approx(solution.plan.cost, rel=1e-9, abs=1e-10)


def test_potentials_are_dual_feasible():
    rng = lab_rng(3, 0)
    mu, nu = random_measure(rng, 7, 2), random_measure(rng, 5, 2)
    solution = w2(mu, nu)
    costs = np.sum((mu.support[:, None, :] - nu.support[None, :, :]) ** 2, axis=2)
    slack = costs - solution.potentials.psi[:, None] - solution.potentials.phi[None, :]
    assert slack.min() >= -1e-8 * max(1.0, costs.max())
    assert solution.potentials.value(mu, nu) == pytest.approx(solution.plan.cost, abs=1e-7)


def test_kantorovich_duality():
    rng = lab_rng(4, 0)
    mu, nu = random_measure(rng, 9, 1), random_measure(rng, 6, 1)
    report = kantorovich_duality_check(mu, nu)
    assert report.name == "kantorovich_duality_gap"
    assert report.passed


def test_dimension_mismatch():
    with pytest.raises(DomainError):
        w2(DiscreteMeasure.dirac(0.0), DiscreteMeasure.dirac([0.0, 0.0]))
    with pytest.raises(DomainError):
        quantile_cost(DiscreteMeasure.dirac([0.0, 1.0]), DiscreteMeasure.dirac([0.0, 0.0]))


def test_solver_size_cap():
    big = DiscreteMeasure(np.arange(257, dtype=float), np.full(257, 1 / 257))
    with pytest.raises(SizeLimitError):
        w2(big, DiscreteMeasure.dirac(0.0))


def test_measure_validation():
    with pytest.raises(DomainError):
        DiscreteMeasure(np.array([0.0, 1.0]), np.array([0.5, 0.6]))
    with pytest.raises(DomainError):
        DiscreteMeasure(np.array([1.0, 1.0]), np.array([0.5, 0.5]))


def test_measure_text_format():
    mu = random_measure(lab_rng(5, 0), 4, 2)
    parsed = DiscreteMeasure.from_text(mu.to_text())
    np.testing.assert_array_equal(parsed.support, mu.support)
    np.testing.assert_allclose(parsed.weights, mu.weights, rtol=1e-14)
    with pytest.raises(DomainError):
        DiscreteMeasure.from_text("dim 1\n1.0 0.0\n")


def test_relative_entropy():
    nu = DiscreteMeasure(np.array([0.0, 1.0]), np.array([0.5, 0.5]))
    mu = DiscreteMeasure(np.array([0.0, 1.0]), np.array([0.25, 0.75]))
    expected = 0.25 * math.log(0.5) + 0.75 * math.log(1.5)
    assert relative_entropy(mu, nu) == pytest.approx(expected)
    assert relative_entropy(nu, nu) == 0.0
    outside = DiscreteMeasure.dirac(2.0)
    assert not is_absolutely_continuous(outside, nu)
    assert relative_entropy(outside, nu) == math.inf


def test_hopf_lax_of_a_quadratic():
    grid = np.linspace(-4, 4, 801)
    q = hopf_lax(grid**2 / 2, 1.0, grid)
    inside = np.abs(grid) <= 2
    np.testing.assert_allclose(q[inside], grid[inside] ** 2 / 4, atol=1e-4)


def test_hopf_lax_rejects_nonpositive_time():
    grid = np.linspace(-1, 1, 5)
    with pytest.raises(DomainError):
        hopf_lax(grid, 0.0, grid)


def test_hamilton_jacobi_residual_is_small():
    grid = np.linspace(-4, 4, 801)
    assert hamilton_jacobi_residual(lambda y: y**2 / 2, grid, 1.0) < 0.1


@pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
def test_hopf_lax_exponential_bound(c):
    rule = uniform_gaussian_rule(spacing=0.05, half_width=8.0)
    report = hopf_lax_exponential_check(lambda y: c * y**2 / 2, rule)
    assert report.passed
    assert report.lhs == pytest.approx(0.5 * math.log(1 + c), abs=2e-3)


@pytest.mark.parametrize("b", [0.25, 0.5, 1.0])
def test_t2_on_lattice_shifts(b):
    reports = shift_family(b)
    assert len(reports) == 3
    assert all(r.name == "t2_transport" and r.passed for r in reports)


def test_shift_must_lie_on_the_lattice():
    with pytest.raises(DomainError):
        shift_family(0.5, spacings=(0.3,))


def test_lipschitz_densities_are_log_lipschitz():
    density = random_lipschitz_density(lab_rng(9, 0), lipschitz=0.8)
    x = np.linspace(-6.0, 6.0, 241)
    log_f = np.log(density(x))
    assert np.all(np.abs(np.diff(log_f)) <= 0.8 * np.diff(x) + 1e-12)
    assert log_f[0] == log_f[1] and log_f[-1] == log_f[-2]
    with pytest.raises(DomainError):
        random_lipschitz_density(lab_rng(9, 0), lipschitz=0.0)


def test_gauss_hermite_refinement_never_gates():
    reports = gauss_hermite_refinement(shift_density(0.5), "shift b=0.5")
    assert [r.details.get("order") for r in reports[:-1]] == [16, 32, 64]
    assert reports[-1].name == "t2_refinement_gap"
    assert all(r.diagnostic for r in reports)
    for report in reports[:-1]:
        assert report.rhs == pytest.approx(0.25, rel=1e-2)
    # quadrature nodes are not shift-invariant, so the discrete W₂² overshoots b²
    assert any(not r.passed for r in reports)
    assert SuiteSummary.from_reports("transport", 1, reports).failures == 0


def test_t2_on_lipschitz_densities_is_tracked():
    for k in range(3):
        reports = gauss_hermite_refinement(random_lipschitz_density(lab_rng(9, k)), "lipschitz")
        assert len(reports) == 4
        assert all(r.diagnostic and math.isfinite(r.margin) for r in reports)
        assert all(r.rhs >= 0.0 for r in reports[:-1])


def test_t2_of_the_constant_density():
    gamma = discretized_gaussian(gauss_hermite_rule(16))
    report = t2_check(np.ones(gamma.size), gamma)
    assert report.passed
    assert report.lhs == pytest.approx(0.0, abs=1e-9)
    assert report.rhs == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32),
    s=st.floats(min_value=0.05, max_value=4.0),
    c=st.floats(min_value=-10.0, max_value=10.0),
)
def test_hopf_lax_is_monotone_and_shift_equivariant(seed, s, c):
    rng = lab_rng(seed, 0)
    grid = np.sort(rng.normal(scale=2.0, size=30))
    phi = rng.normal(size=30)
    psi = phi + rng.uniform(0.0, 1.0, size=30)
    q_phi = hopf_lax(phi, s, grid)
    assert np.all(q_phi <= hopf_lax(psi, s, grid))
    np.testing.assert_allclose(hopf_lax(phi + c, s, grid), q_phi + c, atol=1e-12)


@settings(max_examples=20, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32),
    dim=st.sampled_from([1, 2]),
)
def test_w2_triangle_inequality(seed, dim):
    rng = lab_rng(seed, 0)
    mu, nu, xi = (random_measure(rng, int(rng.integers(1, 10)), dim) for _ in range(3))
    direct = w2(mu, nu).distance
    assert direct <= w2(mu, xi).distance + w2(xi, nu).distance + 1e-8
