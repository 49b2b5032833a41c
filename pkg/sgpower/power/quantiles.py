"""Gaussian and Gumbel quantiles, and the law of the Gaussian maximum"""

# License: MIT

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri
from scipy.stats import gumbel_r

from ..utils import check_generator
from ..utils.exceptions import DomainError

# Euler-Mascheroni constant
EULER_GAMMA = 0.577215664901533


def _check_unit_interval(u, name="u"):
    u = np.asarray(u, dtype=float)
    if np.any(~((u > 0) & (u < 1))):
        raise DomainError(f"{name} must lie in the open interval (0, 1)")
    return u


def _scalar_or_array(values, like):
    return float(values) if np.ndim(like) == 0 else values


def normal_quantile(u):
    r"""
    Quantile function :math:`\Phi^{-1}` of the standard normal.

    Parameters
    ----------
    u : float or array-like
        Probabilities in (0, 1).

    Returns
    -------
    z : float or numpy.ndarray
        :math:`\Phi(z) = u`, accurate to well below 1e-9 (Cephes ``ndtri``).

    Raises
    ------
    DomainError
        If some u is outside (0, 1).

    Examples
    --------
    >>> from sgpower.power import normal_quantile
    >>> round(normal_quantile(0.975), 6)
    1.959964
    """
    u_arr = _check_unit_interval(u)
    return _scalar_or_array(ndtri(u_arr), u)


def normal_cdf(z):
    r"""Distribution function :math:`\Phi` of the standard normal."""
    return _scalar_or_array(ndtr(np.asarray(z, dtype=float)), z)


def gumbel_quantile(u):
    r"""
    Quantile function :math:`\Gamma^{-1}(u) = -\log(-\log u)` of the
    standard Gumbel distribution.

    Parameters
    ----------
    u : float or array-like
        Probabilities in (0, 1).

    Returns
    -------
    q : float or numpy.ndarray
    """
    u_arr = _check_unit_interval(u)
    return _scalar_or_array(gumbel_r.ppf(u_arr), u)


@dataclass(frozen=True)
class GumbelParams:
    """Location and (positive) scale of a Gumbel approximation."""

    location: float
    scale: float

    def quantile(self, u):
        """Quantile of the approximating Gumbel law."""
        return self.location + self.scale * gumbel_quantile(u)


def gumbel_params_for_max_gaussian(p):
    r"""
    Gumbel approximation to the maximum of p iid standard normals.

    Parameters
    ----------
    p : int
        Number of normals, at least 3.

    Returns
    -------
    params : GumbelParams
        Location :math:`-\Phi^{-1}(1/p)` and scale
        :math:`-1/\Phi^{-1}(1/p)`.

    Examples
    --------
    >>> from sgpower.power import gumbel_params_for_max_gaussian
    >>> params = gumbel_params_for_max_gaussian(10_000)
    >>> round(params.location, 4), round(params.scale, 4)
    (3.719, 0.2689)
    """
    if p < 3:
        raise DomainError(f"p must be at least 3, not {p}")
    z = normal_quantile(1.0 / p)
    return GumbelParams(location=-z, scale=-1.0 / z)


def max_gaussian_quantile(u, p):
    r"""
    Exact quantile of the maximum of p iid standard normals.

    The maximum has distribution function :math:`\Phi^p`, so its
    u-quantile is :math:`\Phi^{-1}(u^{1/p})`, evaluated through the upper
    tail to keep precision for large p.

    Parameters
    ----------
    u : float or array-like
        Probabilities in (0, 1).

    p : int
        Number of normals, at least 1.

    Returns
    -------
    q : float or numpy.ndarray
    """
    if p < 1:
        raise DomainError(f"p must be at least 1, not {p}")
    u_arr = _check_unit_interval(u)
    upper_tail = -np.expm1(np.log(u_arr) / p)
    return _scalar_or_array(-ndtri(upper_tail), u)


def sample_max_gaussian(p, size=None, random_state=None):
    """
    Draws the maximum of p iid standard normals without drawing all p.

    Parameters
    ----------
    p : int
        Number of normals.

    size : int, tuple or None
        Output shape.

    random_state : None | int | Generator, optional

    Returns
    -------
    maxima : float or numpy.ndarray
    """
    rng = check_generator(random_state)
    u = rng.random(size)
    # rng.random lies in [0, 1); 0 has probability 2^-53 per draw
    u = np.where(u == 0.0, np.nextafter(0.0, 1.0), u)
    return max_gaussian_quantile(u, p)
