import dataclasses
import pytest
import numpy as np
from numpy.testing import assert_equal, assert_allclose
from scipy import integrate, stats
from sklearn.exceptions import NotFittedError

from sgpower.groups import (sylvester_oracle, nonpositive_from_oracle,
                            full_signflip_group)
from sgpower.inference import (maxt, single_test_pvalue, consistency_probe,
                               exact_reference, monte_carlo_reference,
                               ReferenceSet, MaxT, MONTE_CARLO)
from sgpower.utils import DimensionError, canonical_iota


@pytest.fixture(scope="module")
def data():
    rng = np.random.default_rng(42)
    X = rng.normal(size=(16, 10))
    X[:, :3] += 1.0
    return X


def _brute_force_pvalues(X):
    n = X.shape[0]
    t = X.sum(axis=0) / np.sqrt(n)
    maxima = []
    for k in range(2 ** n):
        signs = np.array([-1 if (k >> i) & 1 else 1 for i in range(n)])
        maxima.append((signs[:, None] * X).sum(axis=0).max() / np.sqrt(n))
    maxima = np.array(maxima)
    maxima[0] = t.max()
    return np.array([np.mean(maxima >= tj) for tj in t])


def test_single_test_trivial_reference():
    reference = ReferenceSet(MONTE_CARLO, np.ones((1, 5)))
    assert single_test_pvalue(np.random.default_rng(0).normal(size=5),
                              reference) == 1


def test_single_test_all_positive():
    assert single_test_pvalue([0.5, 1.0, 2.0], exact_reference(3)) == 1 / 8


def test_single_test_errors():
    with pytest.raises(DimensionError):
        single_test_pvalue(np.ones(5), sylvester_oracle(4))
    with pytest.raises(ValueError):
        single_test_pvalue(np.ones((4, 2)), sylvester_oracle(4))


def test_single_test_exact_under_null():
    rng = np.random.default_rng(3)
    reference = exact_reference(sylvester_oracle(16))
    alpha, reps = 1 / 16, 2000
    pvalues = np.array([single_test_pvalue(rng.normal(size=16), reference)
                        for _ in range(reps)])
    rate = np.mean(pvalues <= alpha)
    assert rate <= alpha + 3 * np.sqrt(alpha * (1 - alpha) / reps)


@pytest.mark.parametrize("p", [1, 2, 5])
def test_maxt_matches_brute_force(p):
    rng = np.random.default_rng(p)
    reference = exact_reference(4)
    for _ in range(100):
        X = rng.normal(size=(4, p))
        outcome = maxt(X, reference, alpha=0.2)
        assert_equal(outcome.p_values, _brute_force_pvalues(X))


def test_maxt_zero_noise_oracle():
    n, p = 16, 5
    mu = np.zeros(p)
    mu[0] = 0.5
    X = np.sqrt(n) * np.outer(np.full(n, 1 / np.sqrt(n)), mu)
    reference = sylvester_oracle(n)
    outcome = maxt(X, reference, alpha=1 / 16)
    assert outcome.p_values[0] == 1 / 16
    assert_equal(outcome.rejected, [True, False, False, False, False])
    with pytest.warns(UserWarning):
        outcome = maxt(X, reference, alpha=0.05)
    assert not outcome.rejected.any()


def test_maxt_alpha_below_resolution(data):
    reference = monte_carlo_reference(16, 10, random_state=0)
    with pytest.warns(UserWarning, match="no hypothesis can be rejected"):
        outcome = maxt(data, reference, alpha=0.05)
    assert outcome.n_rejected == 0


def test_maxt_single_element_reference(data):
    reference = monte_carlo_reference(16, 1)
    with pytest.warns(UserWarning):
        outcome = maxt(data, reference, alpha=0.05)
    assert_equal(outcome.p_values, np.ones(10))


def test_maxt_pvalue_grid(data):
    reference = monte_carlo_reference(16, 200, random_state=1)
    outcome = maxt(data, reference, alpha=0.05)
    counts = outcome.p_values * 200
    assert_allclose(counts, np.round(counts))
    assert outcome.p_values.min() >= 1 / 200
    assert outcome.max_reference[0] == outcome.statistics.max()


def test_maxt_critical_value_form(data):
    reference = nonpositive_from_oracle(sylvester_oracle(16))
    for alpha in (1 / 32, 0.05, 0.1, 0.25):
        outcome = maxt(data, reference, alpha=alpha)
        assert_equal(outcome.rejected,
                     outcome.statistics > outcome.critical_value)
        assert_equal(outcome.rejected, outcome.p_values <= alpha)


def test_maxt_monotone_in_alpha(data):
    reference = monte_carlo_reference(16, 500, random_state=2)
    previous = np.zeros(10, dtype=bool)
    for alpha in (0.01, 0.02, 0.05, 0.1, 0.2, 0.5):
        rejected = maxt(data, reference, alpha=alpha).rejected
        assert np.all(rejected[previous])
        previous = rejected


@pytest.mark.parametrize("scale", [2.0, 0.5])
def test_maxt_scale_invariance(data, scale):
    reference = monte_carlo_reference(16, 300, random_state=4)
    base = maxt(data, reference, alpha=0.05)
    scaled = maxt(scale * data, reference, alpha=0.05)
    assert_equal(scaled.p_values, base.p_values)
    assert_equal(scaled.rejected, base.rejected)


@pytest.mark.parametrize("c", [3.0, 0.7])
def test_maxt_invariant_to_iota_scale(data, c):
    reference = monte_carlo_reference(16, 300, random_state=5)
    iota = canonical_iota(16)
    base = maxt(data, reference, alpha=0.05)
    scaled = maxt(data, reference, alpha=0.05, iota=c * iota)
    assert_allclose(scaled.statistics, c * base.statistics)
    assert_equal(scaled.p_values, base.p_values)
    assert_equal(scaled.rejected, base.rejected)


def test_maxt_accepts_ones_iota(data):
    reference = sylvester_oracle(16)
    base = maxt(data, reference, alpha=0.125)
    ones = maxt(data, reference, alpha=0.125, iota=np.ones(16))
    assert_equal(ones.p_values, base.p_values)
    assert single_test_pvalue(data[:, 0], reference, iota=np.ones(16)) == \
        single_test_pvalue(data[:, 0], reference)
    with pytest.raises(ValueError):
        maxt(data, reference, alpha=0.125, iota=np.zeros(16))


def test_maxt_monte_carlo_enumerating_full_group():
    rng = np.random.default_rng(7)
    X = rng.normal(size=(4, 3))
    exact = maxt(X, exact_reference(4), alpha=0.25)
    enumerated = ReferenceSet(MONTE_CARLO, full_signflip_group(4))
    mc = maxt(X, enumerated, alpha=0.25)
    assert_equal(mc.p_values, exact.p_values)


def test_maxt_schedule_independent(data):
    reference = monte_carlo_reference(16, 1000, random_state=5)
    base = maxt(data, reference, alpha=0.05)
    blocked = maxt(data, reference, alpha=0.05, block_size=7)
    parallel = maxt(data, reference, alpha=0.05, n_jobs=2)
    assert_equal(blocked.p_values, base.p_values)
    assert_allclose(blocked.max_reference, base.max_reference)
    assert_equal(parallel.p_values, base.p_values)
    assert_equal(parallel.max_reference, base.max_reference)


def test_maxt_outcome_immutable(data):
    outcome = maxt(data, sylvester_oracle(16), alpha=0.1)
    with pytest.raises(dataclasses.FrozenInstanceError):
        outcome.alpha = 0.5
    with pytest.raises(ValueError):
        outcome.p_values[0] = 0


def test_maxt_errors(data):
    with pytest.raises(ValueError):
        maxt(data, sylvester_oracle(16), alpha=1.5)
    with pytest.raises(DimensionError):
        maxt(data, sylvester_oracle(8), alpha=0.05)


def test_maxt_fwer_under_null():
    rng = np.random.default_rng(11)
    reference = nonpositive_from_oracle(sylvester_oracle(16))
    alpha, reps = 0.0625, 1000
    false = [maxt(rng.normal(size=(16, 20)), reference, alpha).rejected.any()
             for _ in range(reps)]
    assert np.mean(false) <= alpha + 3 * np.sqrt(alpha * (1 - alpha) / reps)


def _prob_normal_beats_max(shift, p):
    def integrand(z):
        return stats.norm.pdf(z - shift) * stats.norm.cdf(z) ** p

    return integrate.quad(integrand, -10, shift + 10, limit=200)[0]


def test_consistency_probe_null():
    p, reps = 9, 40000
    estimate, se = consistency_probe(16, p, 0.0, "full", reps,
                                     random_state=0)
    assert abs(estimate - 1 / (p + 1)) < 4 * se


def test_consistency_probe_oracle_reduced_form():
    n, p, mu1, reps = 16, 50, 0.6, 40000
    subgroup = sylvester_oracle(n)
    estimate, se = consistency_probe(n, p, mu1, subgroup, reps,
                                     random_state=1)
    expected = (1 / n) / (p + 1) \
        + (n - 1) / n * _prob_normal_beats_max(np.sqrt(n) * mu1, p)
    assert abs(estimate - expected) < 4 * se


def test_consistency_probe_increasing_in_mu():
    subgroup = sylvester_oracle(16)
    estimates = [consistency_probe(16, 100, mu, subgroup, 5000,
                                   random_state=2)[0]
                 for mu in (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)]
    assert all(a <= b for a, b in zip(estimates, estimates[1:]))
    assert estimates[-1] > estimates[0]


def test_consistency_probe_group_inputs():
    subgroup = sylvester_oracle(8)
    a = consistency_probe(8, 10, 0.5, subgroup, 1000, random_state=3)
    b = consistency_probe(8, 10, 0.5, exact_reference(subgroup), 1000,
                          random_state=3)
    c = consistency_probe(8, 10, 0.5, subgroup.elements, 1000,
                          random_state=3)
    assert a == b == c


def test_consistency_probe_errors():
    with pytest.raises(ValueError):
        consistency_probe(8, 10, -0.1, "full", 10)
    with pytest.raises(ValueError):
        consistency_probe(8, 10, 0.1, "orthogonal", 10)
    with pytest.raises(DimensionError):
        consistency_probe(8, 10, 0.1, sylvester_oracle(4), 10)


def test_maxt_estimator(data):
    estimator = MaxT(alpha=0.05, n_draws=500, random_state=0)
    rejected = estimator.fit_predict(data)
    assert_equal(rejected, estimator.rejected_)
    assert estimator.reference_.count == 500
    assert_equal(estimator.pvalues_, estimator.outcome_.p_values)
    assert estimator.reference_maxima_.shape == (500,)
    assert estimator.summary().shape == (10, 3)
    assert estimator.get_params()["n_draws"] == 500


def test_maxt_estimator_subgroup_reference(data):
    subgroup = sylvester_oracle(16)
    estimator = MaxT(alpha=0.0625, reference=subgroup).fit(data)
    outcome = maxt(data, subgroup, alpha=0.0625)
    assert_equal(estimator.pvalues_, outcome.p_values)
    assert estimator.critical_value_ == outcome.critical_value


def test_maxt_estimator_full_reference():
    X = np.random.default_rng(8).normal(size=(5, 2))
    estimator = MaxT(alpha=0.1, reference="full").fit(X)
    assert estimator.reference_.count == 32


def test_maxt_estimator_errors(data):
    with pytest.raises(NotFittedError):
        MaxT().summary()
    with pytest.raises(ValueError):
        MaxT(reference="bootstrap").fit(data)
