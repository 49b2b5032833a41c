import pytest
import numpy as np
from numpy.testing import assert_allclose
from scipy import optimize, special, stats

from sgpower.power import (normal_quantile, normal_cdf, gumbel_quantile,
                           gumbel_params_for_max_gaussian, GumbelParams,
                           max_gaussian_quantile, sample_max_gaussian,
                           EULER_GAMMA)
from sgpower.utils import DomainError


def _bisection_quantile(u):
    def cdf_gap(z):
        return 0.5 * special.erfc(-z / np.sqrt(2)) - u
    return optimize.brentq(cdf_gap, -9, 9, xtol=1e-14, rtol=1e-14)


def test_normal_quantile_values():
    assert normal_quantile(0.5) == 0
    assert_allclose(normal_quantile(0.975), 1.959963984540054, atol=1e-12)
    assert_allclose(normal_quantile(1e-4), -3.719016485455709, atol=1e-9)


def test_normal_quantile_against_bisection():
    grid = np.linspace(1e-6, 1 - 1e-6, 1000)
    expected = np.array([_bisection_quantile(u) for u in grid])
    assert np.max(np.abs(normal_quantile(grid) - expected)) < 1e-8


def test_normal_quantile_inverts_cdf():
    z = np.linspace(-5, 5, 1000)
    assert_allclose(normal_quantile(normal_cdf(z)), z, atol=1e-8)


@pytest.mark.parametrize("u", [0, 1, -0.5, 2, np.nan])
def test_normal_quantile_domain(u):
    with pytest.raises(DomainError):
        normal_quantile(u)


def test_normal_quantile_tail_magnitude():
    p = 10_000
    assert_allclose(-normal_quantile(1 / p), np.sqrt(2 * np.log(p)),
                    rtol=0.15)


def test_gumbel_quantile():
    assert abs(gumbel_quantile(np.exp(-1))) < 1e-12
    assert_allclose(gumbel_quantile(0.95), 2.970195249, atol=1e-9)
    grid = np.linspace(0.001, 0.999, 500)
    assert_allclose(gumbel_quantile(grid), -np.log(-np.log(grid)),
                    rtol=0, atol=1e-12)
    with pytest.raises(DomainError):
        gumbel_quantile(1.0)


def test_gumbel_params_for_max_gaussian():
    params = gumbel_params_for_max_gaussian(10_000)
    assert_allclose(params.location, 3.7190, atol=1e-4)
    assert_allclose(params.scale, 0.2689, atol=1e-4)
    assert params.location > 0 and params.scale > 0
    with pytest.raises(DomainError):
        gumbel_params_for_max_gaussian(2)


def test_gumbel_params_quantile():
    params = GumbelParams(location=1.0, scale=2.0)
    assert_allclose(params.quantile(np.exp(-1)), 1.0, atol=1e-12)


def test_gumbel_approximates_max_mean():
    # mean of the Gumbel law is location + gamma * scale
    p = 10_000
    params = gumbel_params_for_max_gaussian(p)
    draws = sample_max_gaussian(p, size=20000, random_state=0)
    gumbel_mean = params.location + EULER_GAMMA * params.scale
    assert abs(draws.mean() - gumbel_mean) < 0.1


@pytest.mark.parametrize("p", [1, 10, 1000])
def test_max_gaussian_quantile(p):
    u = np.array([0.01, 0.5, 0.95, 0.999])
    q = max_gaussian_quantile(u, p)
    assert_allclose(normal_cdf(q) ** p, u, rtol=1e-9)
    if p == 1:
        assert_allclose(q, normal_quantile(u), atol=1e-12)


def test_max_gaussian_quantile_large_p_precision():
    q = max_gaussian_quantile(0.5, 10 ** 8)
    assert np.isfinite(q)
    assert 5.5 < q < 6.1


def test_sample_max_gaussian_distribution():
    p = 50
    draws = sample_max_gaussian(p, size=5000, random_state=1)
    result = stats.kstest(draws, lambda x: special.ndtr(x) ** p)
    assert result.pvalue > 1e-3


def test_sample_max_gaussian_shapes():
    assert np.ndim(sample_max_gaussian(10, random_state=0)) == 0
    assert sample_max_gaussian(10, size=(3, 4), random_state=0).shape == \
        (3, 4)
