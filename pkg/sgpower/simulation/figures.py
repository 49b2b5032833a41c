"""Experiment definitions behind the power comparison figures"""

# License: MIT

import logging
from dataclasses import dataclass
from typing import Optional

import pandas as pd

from ..groups import ConstructionSpec, Subgroup, nested_chain
from ..power import mu_os, mu_h
from ..utils import substream
from .estimate import estimate
from .io import RESULT_COLUMNS
from .scenario import Scenario, SUBGROUP, MONTE_CARLO

logger = logging.getLogger(__name__)

FIGURE_IDS = (1, 2, 3, 4)
FULL = "full"
DESK = "desk"
DESK_REPS_DIVISOR = 10
DESK_MAX_P = 2000

LEFT = "left"
RIGHT = "right"

# Single test versus maxT over subgroup sizes
FIG1_N = 32
FIG1_ALPHA = 1 / 16
FIG1_REPS = 10_000
FIG1_PANELS = {LEFT: (1, 0.3), RIGHT: (1000, 0.7)}
FIG1_SIZES = tuple(2 ** i for i in range(1, 11))

# Oracle, non-positive and Monte Carlo at the derived signals
ALPHA = 0.05
REPS = 1000
MC_DRAWS = 1000
FIG2_N = 32
FIG2_P_GRID = (10, 100, 1000, 10_000)
FIG3_P = 10_000
FIG3_N_GRID = (32, 64, 128, 256)
FIG4_P = 10_000
FIG4_N = {LEFT: 32, RIGHT: 64}
FIG4_PROP_GRID = (0.1, 0.2, 0.4, 0.6, 0.8, 1.0)


@dataclass(frozen=True)
class CurvePoint:
    """One point of one curve: a scenario plus where it is drawn."""

    figure: int
    panel: str
    curve: str
    x: float
    scenario: Scenario
    subgroup: Optional[Subgroup] = None


def _check_scale(scale):
    if scale not in (FULL, DESK):
        raise ValueError(f"scale must be '{FULL}' or '{DESK}', not {scale!r}")


def _reps(reps, scale):
    return reps if scale == FULL else max(1, reps // DESK_REPS_DIVISOR)


def _cap_p(p, scale):
    return p if scale == FULL else min(p, DESK_MAX_P)


class _SubgroupCache:
    """Builds every deterministic subgroup once per figure."""

    def __init__(self, seed):
        self.seed = seed
        self._built = {}

    def get(self, spec):
        key = (spec.n, spec.strategy, spec.target_size)
        if key not in self._built:
            self._built[key] = spec.build(random_state=substream(self.seed))
        return self._built[key]


def _three_methods(figure, panel, x, n, p, mu, prop_false, reps, seed,
                   oracle_size, nonpositive_size, cache):
    points = [CurvePoint(
        figure, panel, f"{MONTE_CARLO}_{MC_DRAWS}", x,
        Scenario(n=n, p=p, mu_value=mu, prop_false=prop_false, alpha=ALPHA,
                 method=MONTE_CARLO, n_draws=MC_DRAWS, reps=reps, seed=seed),
    )]
    for strategy, size in (("sylvester", oracle_size),
                           ("nonpositive", nonpositive_size)):
        spec = ConstructionSpec(n, size, strategy)
        name = "oracle" if strategy == "sylvester" else strategy
        points.append(CurvePoint(
            figure, panel, f"{name}_{size}", x,
            Scenario(n=n, p=p, mu_value=mu, prop_false=prop_false,
                     alpha=ALPHA, method=SUBGROUP, construction=spec,
                     reps=reps, seed=seed),
            cache.get(spec),
        ))
    return points


def _figure1(scale, seed):
    reps = _reps(FIG1_REPS, scale)
    chain = nested_chain(FIG1_N, FIG1_SIZES, random_state=substream(seed))
    points = []
    for panel, (p, mu) in FIG1_PANELS.items():
        p = _cap_p(p, scale)
        for size, subgroup in zip(FIG1_SIZES, chain):
            spec = ConstructionSpec(FIG1_N, size, "nested")
            points.append(CurvePoint(
                1, panel, SUBGROUP, size,
                Scenario(n=FIG1_N, p=p, mu_value=mu, alpha=FIG1_ALPHA,
                         method=SUBGROUP, construction=spec, reps=reps,
                         seed=seed),
                subgroup,
            ))
            points.append(CurvePoint(
                1, panel, MONTE_CARLO, size,
                Scenario(n=FIG1_N, p=p, mu_value=mu, alpha=FIG1_ALPHA,
                         method=MONTE_CARLO, n_draws=size, reps=reps,
                         seed=seed),
            ))
    return points


def _figure2(scale, seed):
    reps = _reps(REPS, scale)
    cache = _SubgroupCache(seed)
    n = FIG2_N
    points = []
    for panel, signal in ((LEFT, mu_h), (RIGHT, mu_os)):
        for p in sorted({_cap_p(p, scale) for p in FIG2_P_GRID}):
            points += _three_methods(2, panel, p, n, p, signal(n, p, ALPHA),
                                     1.0, reps, seed, n, 2 * n, cache)
    return points


def _figure3(scale, seed):
    reps = _reps(REPS, scale)
    cache = _SubgroupCache(seed)
    p = _cap_p(FIG3_P, scale)
    points = []
    for n in FIG3_N_GRID:
        mu = mu_os(n, p, ALPHA)
        points += _three_methods(3, LEFT, n, n, p, mu, 1.0, reps, seed,
                                 FIG2_N, 2 * FIG2_N, cache)
        points += _three_methods(3, RIGHT, n, n, p, mu, 1.0, reps, seed,
                                 n, 2 * n, cache)
    return points


def _figure4(scale, seed):
    reps = _reps(REPS, scale)
    cache = _SubgroupCache(seed)
    p = _cap_p(FIG4_P, scale)
    points = []
    for panel, n in FIG4_N.items():
        mu = mu_os(n, p, ALPHA)
        for prop in FIG4_PROP_GRID:
            points += _three_methods(4, panel, prop, n, p, mu, prop, reps,
                                     seed, n, 2 * n, cache)
    return points


_FIGURES = {1: _figure1, 2: _figure2, 3: _figure3, 4: _figure4}


def figure_points(figure_id, scale=DESK, seed=0):
    """
    Lists the curve points of a figure without running them.

    Parameters
    ----------
    figure_id : {1, 2, 3, 4}
        1: single test and maxT power over subgroup and Monte Carlo sizes.
        2: power over p at the full-group and oracle signals.
        3: power over n at the oracle signal.
        4: power over the proportion of false hypotheses.

    scale : {'desk', 'full'}, (default 'desk')
        'full' uses the published repetitions. 'desk' divides them by 10
        and caps p at 2000.

    seed : int, (default 0)
        Base seed shared by every point, so curves are compared on common
        random numbers.

    Returns
    -------
    points : list of CurvePoint
    """
    _check_scale(scale)
    if figure_id not in _FIGURES:
        raise ValueError(
            f"figure_id must be one of {FIGURE_IDS}, not {figure_id!r}"
        )
    return _FIGURES[figure_id](scale, seed)


def reproduce_figure(figure_id, scale=DESK, seed=0, n_jobs=None,
                     verbose=False):
    """
    Runs every point of a figure.

    Points whose scenarios coincide, such as a curve drawn in both panels,
    are estimated once and reported under each panel.

    Parameters
    ----------
    figure_id : {1, 2, 3, 4}
        See :func:`figure_points`.

    scale : {'desk', 'full'}, (default 'desk')

    seed : int, (default 0)

    n_jobs : int, None, optional (default None)
        Passed to :func:`estimate`.

    verbose : boolean, default=False
        Logs every point at INFO level.

    Returns
    -------
    table : pandas.DataFrame
        One row per curve point with columns ``figure, panel, curve, x,
        power, se, fwer, se_fwer, runtime_s, seed``.
    """
    points = figure_points(figure_id, scale=scale, seed=seed)
    logger.info("figure %s (%s scale): %d points, %d distinct", figure_id,
                scale, len(points), len({pt.scenario for pt in points}))
    results = {}
    rows = []
    for point in points:
        if point.scenario not in results:
            results[point.scenario] = estimate(
                point.scenario, n_jobs=n_jobs, subgroup=point.subgroup,
                verbose=verbose)
        result = results[point.scenario]
        rows.append({
            "figure": point.figure,
            "panel": point.panel,
            "curve": point.curve,
            "x": point.x,
            "power": result.power,
            "se": result.se_power,
            "fwer": result.fwer,
            "se_fwer": result.se_fwer,
            "runtime_s": result.runtime,
            "seed": seed,
        })
    return pd.DataFrame(rows, columns=RESULT_COLUMNS)
