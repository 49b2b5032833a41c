# License: MIT

import numpy as np

from .random import check_generator


def rand_sphere(n, size=None, random_state=None):
    """
    Samples points uniformly from the unit sphere in R^n.

    Parameters
    ----------
    n : int, positive
        Dimension of the ambient space.

    size : int or None
        Number of points. If None a single vector is returned.

    random_state : None | int | Generator, optional
        Seed to set randomization for reproducible results

    Returns
    -------
    U : numpy.ndarray, shape (n,) or (size, n)
        Unit vectors. For a uniform orthogonal matrix H and any unit vector
        v, Hv has this law.

    Notes
    -----
    Normalizes standard Gaussian vectors, which are orthogonally invariant.
    """
    rng = check_generator(random_state)
    shape = (n,) if size is None else (size, n)
    Z = rng.standard_normal(shape)
    return Z / np.linalg.norm(Z, axis=-1, keepdims=True)
