"""Semi-analytic power of subgroup and full-group maxT"""

# License: MIT

import logging

import numpy as np

from ..utils import (check_alpha, check_generator, n_allowed_exceedances,
                     rand_sphere)
from ..utils.exceptions import DimensionError
from .quantiles import (normal_cdf, max_gaussian_quantile,
                        sample_max_gaussian)

logger = logging.getLogger(__name__)

GAUSSIAN_LEAK = "gaussian"
SPHERE_LEAK = "sphere"
_LEAK_ALIASES = {
    "gaussian": GAUSSIAN_LEAK,
    "gaussianleak": GAUSSIAN_LEAK,
    "sphere": SPHERE_LEAK,
    "sphereleak": SPHERE_LEAK,
}

DEFAULT_REPS_INNER = 4095


def _upper_quantile_index(alpha, n_elements):
    """
    0-based position in the sorted non-identity draws of the rank-rule
    critical value, or None when nothing can be rejected.
    """
    r = n_allowed_exceedances(alpha, n_elements)
    if r == 0:
        return None
    return n_elements - r - 1


def _check_means(mu, p, k):
    mu = np.asarray(mu, dtype=float)
    if mu.ndim == 0:
        mu = np.concatenate([np.full(k, float(mu)), np.zeros(p - k)])
    if mu.shape != (p,):
        raise DimensionError(f"mu must be a scalar or have length {p}")
    return mu


def _max_y_draws(p, size, rng, sigma_factor):
    if sigma_factor is None:
        return sample_max_gaussian(p, size=size, random_state=rng)
    noise = rng.standard_normal(size + (p,))
    return (noise @ sigma_factor.T).max(axis=-1)


def oracle_power(n, p, k, mu, s_size, alpha, reps, random_state=None,
                 sigma_factor=None, batch_size=256):
    r"""
    Power of the oracle subgroup maxT method in its semi-analytic form.

    For an oracle subgroup S the power equals

    .. math::

        \frac{1}{k}\sum_{j \leq k} P[Z_j > q_\alpha^{|S|}(\max_l Y_l)],

    with :math:`Z \sim N(n^{1/2}\mu, \Sigma)`, Y an independent
    :math:`N(0, \Sigma)` vector and :math:`q_\alpha^{|S|}` the sample upper
    quantile of :math:`|S| - 1` draws of :math:`\max_l Y_l` under the rank
    rule of :func:`sgpower.inference.maxt`. Both probabilities are
    simulated.

    Parameters
    ----------
    n : int
        Number of observations.

    p : int
        Number of hypotheses.

    k : int
        Number of false hypotheses, the first k entries of ``mu``.

    mu : float or array-like, shape (p,)
        Means. A scalar gives k entries equal to ``mu`` and p - k zeros.

    s_size : int
        Subgroup size |S|, at least 2.

    alpha : float
        Familywise error level in (0, 1).

    reps : int
        Number of repetitions.

    random_state : None | int | Generator, optional

    sigma_factor : array-like, shape (p, p), optional (default identity)
        Lower triangular L with :math:`\Sigma = L L'`.

    batch_size : int, (default 256)
        Repetitions drawn at once.

    Returns
    -------
    power : float

    se : float
        Standard error over repetitions.
    """
    if not 1 <= k <= p:
        raise ValueError(f"k must lie in [1, p], got k={k}, p={p}")
    if s_size < 2:
        raise ValueError("s_size must be at least 2")
    if reps < 1:
        raise ValueError("reps must be at least 1")
    alpha = check_alpha(alpha)
    mu = _check_means(mu, p, k)
    if sigma_factor is not None:
        sigma_factor = np.asarray(sigma_factor, dtype=float)
        if sigma_factor.shape != (p, p):
            raise DimensionError(f"sigma_factor must have shape ({p}, {p})")
        sd = np.sqrt(np.sum(sigma_factor[:k] ** 2, axis=1))
    else:
        sd = np.ones(k)

    index = _upper_quantile_index(alpha, s_size)
    if index is None:
        logger.info("oracle_power: alpha < 1/|S|, power is 0")
        return 0.0, 0.0

    rng = check_generator(random_state)
    shift = np.sqrt(n) * mu[:k]
    fractions = np.empty(reps)
    for start in range(0, reps, batch_size):
        size = min(batch_size, reps - start)
        draws = _max_y_draws(p, (size, s_size - 1), rng, sigma_factor)
        critical = np.partition(draws, index, axis=1)[:, index]
        # only marginals of Z_j enter the average over j
        z = shift + sd * rng.standard_normal((size, k))
        fractions[start:start + size] = np.mean(
            z > critical[:, np.newaxis], axis=1)

    power = float(fractions.mean())
    se = float(fractions.std(ddof=1) / np.sqrt(reps)) if reps > 1 else 0.0
    return power, se


def oracle_power_limit(n, p, mu1, alpha):
    r"""
    Oracle subgroup power as the subgroup size grows without bound.

    .. math::

        \Phi(n^{1/2}\mu_1 - F_p^{-1}(1 - \alpha)),

    where :math:`F_p = \Phi^p` is the law of the maximum of p independent
    standard normals.

    Examples
    --------
    >>> from sgpower.power import oracle_power_limit
    >>> round(oracle_power_limit(32, 1, 0.0, 0.05), 6)
    0.05
    """
    alpha = check_alpha(alpha)
    critical = max_gaussian_quantile(1 - alpha, p)
    return float(normal_cdf(np.sqrt(n) * mu1 - critical))


def _leak_draws(n, size, rng, mode):
    if mode == GAUSSIAN_LEAK:
        return rng.standard_normal((size, n))[:, 0]
    return np.sqrt(n) * rand_sphere(n, size=size, random_state=rng)[:, 0]


def fullgroup_power_approx(n, p, mu1, alpha, reps, random_state=None,
                           mode=GAUSSIAN_LEAK,
                           reps_inner=DEFAULT_REPS_INNER):
    r"""
    Approximate power of maxT based on the full orthogonal group.

    The power of the Monte Carlo maxT method with many draws is well
    approximated by

    .. math::

        P[Z_1 > q_\alpha(n^{1/2}\iota'\bar{H}\iota\mu_1 + \max_l Y_l)],

    with :math:`Z_1 \sim N(n^{1/2}\mu_1, 1)`, :math:`\bar{H}` uniform on the
    orthogonal group and Y a vector of p independent standard normals.

    Parameters
    ----------
    n : int
        Number of observations.

    p : int
        Number of hypotheses.

    mu1 : float
        Non-negative mean of the hypothesis whose power is computed.

    alpha : float
        Familywise error level in (0, 1).

    reps : int
        Number of outer draws of :math:`Z_1`.

    random_state : None | int | Generator, optional
        The two modes consume the same random numbers, so a shared seed
        gives paired draws.

    mode : {'gaussian', 'sphere'}, (default 'gaussian')
        How :math:`n^{1/2}\iota'\bar{H}\iota` is drawn. 'gaussian' uses its
        standard normal approximation, 'sphere' its exact law as
        :math:`n^{1/2}` times one coordinate of a uniform unit vector.

    reps_inner : int, (default 4095)
        Joint draws of leak and maximum forming the reference quantile.

    Returns
    -------
    power : float

    se : float
        Binomial standard error over the outer draws.
    """
    if mu1 < 0:
        raise ValueError("mu1 must be non-negative")
    if reps < 1 or reps_inner < 1:
        raise ValueError("reps and reps_inner must be at least 1")
    alpha = check_alpha(alpha)
    mode = _LEAK_ALIASES.get(str(mode).lower().replace("_", ""))
    if mode is None:
        raise ValueError("mode must be 'gaussian' or 'sphere'")

    index = _upper_quantile_index(alpha, reps_inner + 1)
    if index is None:
        return 0.0, 0.0

    rng = check_generator(random_state)
    reference = (_leak_draws(n, reps_inner, rng, mode) * mu1
                 + sample_max_gaussian(p, reps_inner, rng))
    critical = np.partition(reference, index)[index]

    z1 = np.sqrt(n) * mu1 + rng.standard_normal(reps)
    power = float(np.mean(z1 > critical))
    logger.debug("fullgroup_power_approx: critical %.6g, power %.6g",
                 critical, power)
    return power, float(np.sqrt(power * (1 - power) / reps))
