"""Group invariance tests and the single-step maxT procedure"""

# License: MIT

import logging
import warnings
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ..groups import Subgroup, sample_uniform_signflip
from ..power.quantiles import sample_max_gaussian
from ..utils import (check_data, check_signs, check_iota, check_alpha,
                     check_generator, n_allowed_exceedances)
from ..utils.exceptions import DimensionError
from .reference import (ReferenceSet, check_reference, exact_reference,
                        monte_carlo_reference)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TestOutcome:
    """
    Result of a maxT run.

    Attributes
    ----------
    statistics : numpy.ndarray, shape (p,)
        Column statistics :math:`t_j = \\iota' X_j`.

    max_reference : numpy.ndarray, shape (M,)
        Column-wise maximum statistic for every reference element, in the
        order of the reference set (identity first).

    p_values : numpy.ndarray, shape (p,)
        Multiplicity adjusted p-values, multiples of 1/M.

    rejected : numpy.ndarray of bool, shape (p,)

    alpha : float

    critical_value : float
        Hypotheses with statistic strictly above this value are rejected.
    """

    __test__ = False

    statistics: np.ndarray
    max_reference: np.ndarray
    p_values: np.ndarray
    rejected: np.ndarray
    alpha: float
    critical_value: float

    def __post_init__(self):
        for arr in (self.statistics, self.max_reference, self.p_values,
                    self.rejected):
            arr.flags.writeable = False

    @property
    def n_rejected(self):
        return int(self.rejected.sum())


def _statistics(X, iota):
    return iota @ X


def _block_maxima(elements, X, iota):
    return ((elements * iota) @ X).max(axis=1)


def _exceedance_counts(values, statistics):
    """#{values >= t} for every t in statistics."""
    values = np.sort(values)
    return values.size - np.searchsorted(values, statistics, side="left")


def single_test_pvalue(x, reference, iota=None):
    r"""
    P-value of the group invariance test of a single hypothesis.

    Parameters
    ----------
    x : array-like, shape (n,)
        Observations of one variable.

    reference : ReferenceSet or Subgroup
        Sign-flips to compare against, identity first.

    iota : array-like, shape (n,), optional (default canonical)

    Returns
    -------
    p_value : float
        :math:`M^{-1} \#\{g : \iota' S_g x \geq \iota' x\}`, at least 1/M.

    Examples
    --------
    >>> from sgpower.inference import single_test_pvalue, exact_reference
    >>> single_test_pvalue([1.0, 2.0, 3.0], exact_reference(3))
    0.125
    """
    x = check_data(x)
    if x.shape[1] != 1:
        raise ValueError("single_test_pvalue expects a single column")
    n = x.shape[0]
    reference = check_reference(reference, n=n)
    iota = check_iota(iota, n=n, unit=False)

    x = x[:, 0]
    t = float(_statistics(x, iota))
    values = (reference.elements * iota) @ x
    values[0] = t
    return float(np.count_nonzero(values >= t)) / reference.count


def maxt(X, reference, alpha, iota=None, n_jobs=None, block_size=256):
    r"""
    Single-step maxT multiple testing with a sign-flip reference set.

    Every column j of X is a one-sided test of zero mean against a positive
    mean. The statistic is :math:`t_j = \iota' X_j` and the adjusted
    p-value is the fraction of reference elements g whose maximum
    statistic :math:`m_g = \max_j \iota' (S_g X)_j` is at least
    :math:`t_j`.

    Parameters
    ----------
    X : array-like, shape (n, p)
        Data matrix, one observation per row and one hypothesis per column.

    reference : ReferenceSet or Subgroup
        Reference sign-flips, identity first.

    alpha : float
        Familywise error level in (0, 1).

    iota : array-like, shape (n,), optional (default canonical)
        Nonzero vector defining the statistic, used as given. Rescaling it
        by a positive constant leaves p-values and rejections unchanged.

    n_jobs : int, None, optional (default None)
        The number of jobs over which reference blocks are computed. If
        None, will not use parallel processing.

    block_size : int, (default 256)
        Number of reference elements evaluated per block.

    Returns
    -------
    outcome : TestOutcome

    Raises
    ------
    ValueError
        If alpha is outside (0, 1).

    DimensionError
        If the reference and X disagree on n.

    Notes
    -----
    Ties :math:`m_g = t_j` count against rejection. The identity always
    contributes :math:`m_0 = \max_j t_j`, so every p-value is at least
    1/M. Equivalently, :math:`t_j` is rejected when it exceeds the
    :math:`(M - r)`-th smallest :math:`m_g`, where r is the largest count
    with :math:`r / M \leq \alpha`.

    Examples
    --------
    >>> import numpy as np
    >>> from sgpower.groups import sylvester_oracle
    >>> from sgpower.inference import maxt
    >>> X = np.zeros((8, 3))
    >>> X[:, 0] = 1
    >>> outcome = maxt(X, sylvester_oracle(8), alpha=0.125)
    >>> outcome.rejected
    array([ True, False, False])
    """
    alpha = check_alpha(alpha)
    X = check_data(X)
    n = X.shape[0]
    reference = check_reference(reference, n=n)
    iota = check_iota(iota, n=n, unit=False)
    M = reference.count

    if alpha < 1.0 / M:
        warnings.warn(
            f"alpha={alpha} is below 1/M={1.0 / M:.6g}; "
            "no hypothesis can be rejected",
            UserWarning,
        )

    statistics = _statistics(X, iota)
    elements = reference.elements
    starts = range(0, M, block_size)
    if n_jobs is None or n_jobs == 1:
        blocks = [_block_maxima(elements[s:s + block_size], X, iota)
                  for s in starts]
    else:
        blocks = Parallel(n_jobs=n_jobs)(
            delayed(_block_maxima)(elements[s:s + block_size], X, iota)
            for s in starts
        )
    max_reference = np.concatenate(blocks)
    max_reference[0] = statistics.max()

    counts = _exceedance_counts(max_reference, statistics)
    p_values = counts / M
    rejected = p_values <= alpha

    r = n_allowed_exceedances(alpha, M)
    critical_value = float(np.sort(max_reference)[M - r - 1])

    logger.debug("maxt: M=%d, p=%d, %d rejections", M, X.shape[1],
                 int(rejected.sum()))
    return TestOutcome(
        statistics=statistics,
        max_reference=max_reference,
        p_values=p_values,
        rejected=rejected,
        alpha=alpha,
        critical_value=critical_value,
    )


def _element_leaks(group, n, iota, reps, rng):
    if isinstance(group, str):
        if group != "full":
            raise ValueError(f"Unknown group {group!r}, expected 'full'")
        signs = sample_uniform_signflip(n, rng, size=reps)
        return signs @ (iota * iota)
    if isinstance(group, Subgroup):
        elements = group.elements
    elif isinstance(group, ReferenceSet):
        elements = group.elements
    else:
        elements = check_signs(group)
        if elements.ndim == 1:
            elements = elements[np.newaxis, :]
    if elements.shape[1] != n:
        raise DimensionError(
            f"Group acts on {elements.shape[1]} observations, not {n}"
        )
    leaks = elements @ (iota * iota)
    return leaks[rng.integers(0, len(leaks), size=reps)]


def consistency_probe(n, p, mu1, group, reps, random_state=None, iota=None):
    r"""
    Estimates the probability governing consistency of maxT.

    The Monte Carlo maxT method drawing from a set of sign-flips is
    consistent exactly when

    .. math::

        P[\iota' X_1 > n^{1/2} \iota' \bar{G} \iota \mu_1
        + \max_j \iota' E^2_j] \to 1,

    with :math:`\bar{G}` uniform on the set and :math:`E^2` an independent
    n x p standard Gaussian matrix. Since :math:`\iota' X_1` is
    :math:`N(n^{1/2}\mu_1, 1)` and the maximum over the columns of
    :math:`\iota' E^2` is the maximum of p independent standard normals,
    the probability is simulated in that reduced form.

    Parameters
    ----------
    n : int
        Number of observations.

    p : int
        Number of columns of the independent noise matrix.

    mu1 : float
        Non-negative mean of the first hypothesis.

    group : Subgroup, ReferenceSet, array-like or 'full'
        Set the sign-flip is drawn from. 'full' draws uniformly from all
        2^n sign-flips.

    reps : int
        Number of repetitions.

    random_state : None | int | Generator, optional

    iota : array-like, shape (n,), optional (default canonical)

    Returns
    -------
    estimate : float

    se : float
        Binomial standard error of the estimate.
    """
    if mu1 < 0:
        raise ValueError("mu1 must be non-negative")
    if reps < 1:
        raise ValueError("reps must be at least 1")
    iota = check_iota(iota, n=n)
    rng = check_generator(random_state)

    leaks = _element_leaks(group, n, iota, reps, rng)
    shift = np.sqrt(n) * mu1
    statistic = shift + rng.standard_normal(reps)
    threshold = shift * leaks + sample_max_gaussian(p, reps, rng)
    hits = statistic > threshold
    estimate = float(hits.mean())
    return estimate, float(np.sqrt(estimate * (1 - estimate) / reps))


class MaxT(BaseEstimator):
    r"""
    Sign-flip maxT multiple testing as an estimator.

    Parameters
    ----------
    alpha : float, (default 0.05)
        Familywise error level.

    reference : 'monte_carlo', 'full', Subgroup or ReferenceSet
        (default 'monte_carlo')
        Reference set. 'monte_carlo' draws ``n_draws - 1`` uniform
        sign-flips at fit time, 'full' enumerates all 2^n sign-flips.

    n_draws : int, (default 1000)
        Number of Monte Carlo elements M, identity included.

    iota : array-like, shape (n,), optional (default canonical)
        Nonzero vector defining the statistic, passed to :func:`maxt`.

    n_jobs : int, None, optional (default None)
        The number of jobs to run in parallel. If None, will not use
        parallel processing.

    random_state : None | int | Generator, optional
        Seed for the Monte Carlo reference.

    Attributes
    ----------
    reference_ : ReferenceSet
        Reference set used at fit time.

    statistics_ : numpy.ndarray, shape (p,)

    pvalues_ : numpy.ndarray, shape (p,)

    rejected_ : numpy.ndarray of bool, shape (p,)

    critical_value_ : float

    reference_maxima_ : numpy.ndarray, shape (M,)

    Examples
    --------
    >>> import numpy as np
    >>> from sgpower.inference import MaxT
    >>> X = np.random.default_rng(0).normal(size=(16, 5))
    >>> X[:, 0] += 3
    >>> bool(MaxT(alpha=0.05, random_state=0).fit_predict(X)[0])
    True
    """

    def __init__(self, alpha=0.05, reference="monte_carlo", n_draws=1000,
                 iota=None, n_jobs=None, random_state=None):
        self.alpha = alpha
        self.reference = reference
        self.n_draws = n_draws
        self.iota = iota
        self.n_jobs = n_jobs
        self.random_state = random_state

    def _make_reference(self, n):
        if isinstance(self.reference, str):
            if self.reference == "monte_carlo":
                return monte_carlo_reference(n, self.n_draws,
                                             self.random_state)
            if self.reference == "full":
                return exact_reference(n)
            raise ValueError(
                "reference must be 'monte_carlo', 'full', a Subgroup or a "
                f"ReferenceSet, not {self.reference!r}"
            )
        return check_reference(self.reference, n=n)

    def fit(self, X, y=None):
        r"""
        Runs the test on X.

        Parameters
        ----------
        X : array-like, shape (n, p)
            Data matrix.

        y : Ignored

        Returns
        -------
        self : returns an instance of self.
        """
        X = check_data(X)
        self.reference_ = self._make_reference(X.shape[0])
        outcome = maxt(X, self.reference_, self.alpha, iota=self.iota,
                       n_jobs=self.n_jobs)
        self.outcome_ = outcome
        self.statistics_ = outcome.statistics
        self.pvalues_ = outcome.p_values
        self.rejected_ = outcome.rejected
        self.critical_value_ = outcome.critical_value
        self.reference_maxima_ = outcome.max_reference
        return self

    def fit_predict(self, X, y=None):
        """Fits and returns the boolean rejection mask."""
        return self.fit(X).rejected_

    def summary(self):
        """One row per hypothesis: statistic, p-value and decision."""
        check_is_fitted(self)
        return np.column_stack([self.statistics_, self.pvalues_,
                                self.rejected_.astype(float)])
