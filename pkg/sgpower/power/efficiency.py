"""Signals at which subgroup and full-group maxT reach power one half"""

# License: MIT

from dataclasses import dataclass

import numpy as np

from ..utils import check_alpha
from ..utils.exceptions import DomainError
from .quantiles import EULER_GAMMA, normal_quantile, gumbel_quantile

ORACLE_SIGNAL = "oracle_signal"
FULL_SIGNAL = "full_signal"


def _check_np(n, p):
    if n < 1:
        raise DomainError(f"n must be a positive integer, not {n}")
    if p < 3:
        raise DomainError(f"p must be at least 3, not {p}")


def _abc(p, alpha):
    z = normal_quantile(1.0 / p)
    a = -EULER_GAMMA / z - z
    b = np.pi ** 2 / (6 * z ** 2)
    c = normal_quantile(1 - alpha)
    return a, b, c


def mu_os(n, p, alpha):
    r"""
    Signal at which the oracle subgroup maxT method has power about 1/2.

    .. math::

        \mu^{OS} = -n^{-1/2}[\Gamma^{-1}(1-\alpha)/\Phi^{-1}(1/p)
        + \Phi^{-1}(1/p)]

    Parameters
    ----------
    n : int
        Number of observations.

    p : int
        Number of hypotheses, at least 3.

    alpha : float
        Familywise error level in (0, 1).

    Returns
    -------
    mu : float

    Examples
    --------
    >>> from sgpower.power import mu_os
    >>> round(mu_os(32, 10_000, 0.05), 4)
    0.7986
    """
    _check_np(n, p)
    alpha = check_alpha(alpha)
    z = normal_quantile(1.0 / p)
    return float(-(gumbel_quantile(1 - alpha) / z + z) / np.sqrt(n))


def mu_os_asymptotic(n, p, alpha):
    r"""
    Leading-order form of :func:`mu_os`,
    :math:`\log(1/\alpha)(2n\log p)^{-1/2} + n^{-1/2}(2\log p)^{1/2}`.
    """
    _check_np(n, p)
    alpha = check_alpha(alpha)
    log_p = np.log(p)
    return float(np.log(1 / alpha) / np.sqrt(2 * n * log_p)
                 + np.sqrt(2 * log_p / n))


def mu_h(n, p, alpha):
    r"""
    Signal at which the full-group maxT method has power about 1/2.

    .. math::

        \mu^{H} = \left(\frac{c^2[a^2 + b(n - c^2)]}{(c^2 - n)^2}
        \right)^{1/2} + \frac{a n^{1/2}}{n - c^2}

    with :math:`a = -\gamma/\Phi^{-1}(1/p) - \Phi^{-1}(1/p)`,
    :math:`b = \pi^2 / (6\Phi^{-1}(1/p)^2)` and
    :math:`c = \Phi^{-1}(1 - \alpha)`.

    Parameters
    ----------
    n : int
        Number of observations, larger than :math:`c^2`.

    p : int
        Number of hypotheses, at least 3.

    alpha : float
        Familywise error level in (0, 1).

    Returns
    -------
    mu : float

    Raises
    ------
    DomainError
        If :math:`n \leq c^2`, where the formula is singular.
    """
    _check_np(n, p)
    alpha = check_alpha(alpha)
    a, b, c = _abc(p, alpha)
    c2 = c ** 2
    if n <= c2:
        raise DomainError(
            f"mu_h requires n > {c2:.6g} at alpha={alpha}, got n={n}"
        )
    root = np.sqrt(c2 * (a ** 2 + b * (n - c2)) / (c2 - n) ** 2)
    return float(root + a * np.sqrt(n) / (n - c2))


def crossover(n, p, alpha, reference=ORACLE_SIGNAL):
    r"""
    Both sides of the inequality deciding which method needs less signal.

    The oracle subgroup method reaches power 1/2 with a smaller signal than
    the full-group method when ``lhs >= rhs``, where

    .. math::

        lhs = n^{-1/2}\Gamma^{-1}(1-\alpha) + n^{-1/2}\Phi^{-1}(1/p)^2,
        \quad
        rhs = \left[\left(\frac{\gamma - \Gamma^{-1}(1-\alpha)}
        {\Phi^{-1}(1-\alpha)}\right)^2 - \frac{\pi^2}{6}\right]^{1/2}.

    Parameters
    ----------
    n : int
        Number of observations.

    p : int
        Number of hypotheses, at least 3.

    alpha : float
        Familywise error level in (0, 1).

    reference : {'oracle_signal', 'full_signal'}, (default 'oracle_signal')
        'oracle_signal' compares the methods at the oracle signal
        :math:`\mu^{OS}`. 'full_signal' compares them at :math:`\mu^{H}`,
        which replaces :math:`\Gamma^{-1}(1-\alpha)` on the left by
        :math:`\gamma`.

    Returns
    -------
    lhs, rhs : float
        The right side does not depend on n or p.
    """
    _check_np(n, p)
    alpha = check_alpha(alpha)
    if reference == ORACLE_SIGNAL:
        offset = gumbel_quantile(1 - alpha)
    elif reference == FULL_SIGNAL:
        offset = EULER_GAMMA
    else:
        raise ValueError(
            f"reference must be '{ORACLE_SIGNAL}' or '{FULL_SIGNAL}', "
            f"not {reference!r}"
        )
    z = normal_quantile(1.0 / p)
    lhs = (offset + z ** 2) / np.sqrt(n)

    c = normal_quantile(1 - alpha)
    if c <= 0:
        raise DomainError(f"crossover requires alpha < 0.5, got {alpha}")
    ratio = (EULER_GAMMA - gumbel_quantile(1 - alpha)) / c
    radicand = ratio ** 2 - np.pi ** 2 / 6
    if radicand < 0:
        raise DomainError(
            f"crossover is undefined at alpha={alpha}: negative radicand"
        )
    return float(lhs), float(np.sqrt(radicand))


@dataclass(frozen=True)
class EffSignals:
    """
    Relative efficiency summary of oracle subgroup and full-group maxT.

    Attributes
    ----------
    mu_os, mu_h : float
        Signals giving power about 1/2 to each method.

    a, b, c : float
        Moments of the normal approximation used for ``mu_h``.

    lhs, rhs : float
        The two sides of the crossover inequality.
    """

    mu_os: float
    mu_h: float
    a: float
    b: float
    c: float
    lhs: float
    rhs: float

    @property
    def oracle_favoured(self):
        """True when the oracle subgroup needs the smaller signal."""
        return self.lhs >= self.rhs


def relative_efficiency(n, p, alpha):
    """
    Computes every relative efficiency quantity at once.

    Parameters
    ----------
    n : int
        Number of observations.

    p : int
        Number of hypotheses, at least 3.

    alpha : float
        Familywise error level in (0, 1).

    Returns
    -------
    signals : EffSignals

    Examples
    --------
    >>> from sgpower.power import relative_efficiency
    >>> signals = relative_efficiency(32, 10_000, 0.05)
    >>> signals.mu_h > signals.mu_os, signals.oracle_favoured
    (True, True)
    """
    a, b, c = _abc(p, check_alpha(alpha))
    lhs, rhs = crossover(n, p, alpha)
    return EffSignals(
        mu_os=mu_os(n, p, alpha),
        mu_h=mu_h(n, p, alpha),
        a=float(a),
        b=float(b),
        c=float(c),
        lhs=lhs,
        rhs=rhs,
    )
