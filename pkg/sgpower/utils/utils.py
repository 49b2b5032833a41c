# License: MIT

import numpy as np
from sklearn.utils import check_array

from .exceptions import DimensionError


def check_data(X, n_samples=None, copy=False):
    r"""
    Checks X and ensures it to be a 2D matrix of observations.

    Parameters
    ----------
    X : array-like, shape (n_samples, n_hypotheses)
        Input data. Rows are observations, columns are hypotheses. A 1D
        array is treated as a single hypothesis.

    n_samples : int, (default=not checked)
        If provided, ensures X has this number of rows.

    copy : boolean, (default=False)
        If True, the returned X is a copy of the input X.

    Returns
    -------
    X_converted : numpy.ndarray, shape (n_samples, n_hypotheses)
        The converted and validated data.
    """
    if np.ndim(X) == 1:
        X = np.asarray(X)[:, np.newaxis]
    X = check_array(X, dtype=np.float64, copy=copy)

    if n_samples is not None and X.shape[0] != n_samples:
        msg = "Data has {} rows but the sign-flips act on {}".format(
            X.shape[0], n_samples
        )
        raise DimensionError(msg)

    return X


def check_signs(signs, n=None):
    r"""
    Checks a sign-flip vector or a stack of them.

    Parameters
    ----------
    signs : array-like, shape (n,) or (n_elements, n)
        Entries must be exactly -1 or +1.

    n : int, (default=not checked)
        If provided, ensures the last dimension has this length.

    Returns
    -------
    signs_converted : numpy.ndarray of int8
        The validated signs.
    """
    signs = np.asarray(signs)
    if signs.ndim not in (1, 2) or signs.shape[-1] == 0:
        msg = "Sign-flips must be a nonempty 1D vector or a 2D stack"
        raise ValueError(msg)
    if not np.all((signs == 1) | (signs == -1)):
        raise ValueError("Every sign must be exactly -1 or +1")
    if n is not None and signs.shape[-1] != n:
        msg = "Sign-flips have length {} but {} was expected".format(
            signs.shape[-1], n
        )
        raise DimensionError(msg)

    return signs.astype(np.int8)


def canonical_iota(n):
    r"""
    Returns the canonical unit vector :math:`n^{-1/2}(1, \dots, 1)'`.

    Parameters
    ----------
    n : int
        Number of observations.

    Returns
    -------
    iota : numpy.ndarray, shape (n,)
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    return np.full(n, 1.0 / np.sqrt(n))


def check_iota(iota, n=None, tol=1e-12, unit=True):
    r"""
    Checks a direction vector, defaulting to the canonical unit vector.

    Parameters
    ----------
    iota : array-like, shape (n,) or None
        The unit vector. If None, the canonical vector is returned, which
        requires ``n``.

    n : int, (default=not checked)
        Expected length.

    tol : float, (default 1e-12)
        Tolerance on the Euclidean norm.

    unit : boolean, default=True
        If True, iota must have Euclidean norm 1, as leaks require. If
        False, any finite nonzero vector is accepted unchanged.

    Returns
    -------
    iota : numpy.ndarray, shape (n,)
    """
    if iota is None:
        if n is None:
            raise ValueError("n is required when iota is None")
        return canonical_iota(n)

    iota = np.asarray(iota, dtype=float)
    if iota.ndim != 1:
        raise ValueError("iota must be a 1D vector")
    if n is not None and iota.shape[0] != n:
        msg = "iota has length {} but {} was expected".format(
            iota.shape[0], n
        )
        raise DimensionError(msg)
    norm = np.linalg.norm(iota)
    if not np.isfinite(norm):
        raise ValueError("iota must be finite")
    if unit and abs(norm - 1.0) > tol:
        raise ValueError("iota must have Euclidean norm 1")
    if norm == 0:
        raise ValueError("iota must be nonzero")

    return iota


def check_alpha(alpha):
    """Ensures the level lies in the open unit interval."""
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must be in (0, 1), not {alpha}")
    return float(alpha)


def n_allowed_exceedances(alpha, n_elements):
    r"""
    Largest count ``r`` with ``r / n_elements <= alpha``.

    A hypothesis is rejected when at most ``r`` reference values are at
    least as large as its statistic. Computed by integer search so that
    the comparison matches ``p <= alpha`` for p-values of the form
    ``count / n_elements``.

    Parameters
    ----------
    alpha : float
        Level in (0, 1).

    n_elements : int
        Number of reference elements, identity included.

    Returns
    -------
    r : int
    """
    r = int(np.floor(alpha * n_elements))
    while (r + 1) / n_elements <= alpha:
        r += 1
    while r > 0 and r / n_elements > alpha:
        r -= 1
    return r


def is_power_of_two(n):
    """True for 1, 2, 4, 8, ..."""
    return isinstance(n, (int, np.integer)) and n >= 1 and (n & (n - 1)) == 0
