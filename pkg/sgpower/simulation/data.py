# License: MIT

import numpy as np

from ..utils import check_generator, check_iota


def generate_data(n, p, mu, random_state=None, iota=None):
    r"""
    Draws a data matrix from the Gaussian location model.

    .. math::

        X = n^{1/2} \iota \mu' + E

    with E an n x p matrix of independent standard normal entries, so that
    :math:`\iota' X_j \sim N(n^{1/2} \mu_j, 1)`.

    Parameters
    ----------
    n : int
        Number of observations (rows).

    p : int
        Number of hypotheses (columns).

    mu : float or array-like, shape (p,)
        Column means of :math:`\iota' X / n^{1/2}`. A scalar is used for
        every column.

    random_state : None | int | Generator, optional
        Seed to set randomization for reproducible results.

    iota : array-like, shape (n,), optional (default canonical)
        Unit vector. With the canonical vector every row has mean ``mu``.

    Returns
    -------
    X : numpy.ndarray, shape (n, p)

    Examples
    --------
    >>> from sgpower.simulation import generate_data
    >>> generate_data(32, 5, 0.7, random_state=0).shape
    (32, 5)
    """
    if n < 1 or p < 1:
        raise ValueError("n and p must be positive integers")
    mu = np.broadcast_to(np.asarray(mu, dtype=float), (p,))
    iota = check_iota(iota, n=n)
    rng = check_generator(random_state)

    E = rng.standard_normal((n, p))
    return np.sqrt(n) * np.outer(iota, mu) + E
