"""Monte Carlo estimation of power and familywise error"""

# License: MIT

import logging
import time
import warnings

import numpy as np
from joblib import Parallel, delayed

from ..inference import maxt, exact_reference, monte_carlo_reference
from ..utils import substream
from .data import generate_data
from .scenario import Scenario, PowerResult, SUBGROUP

logger = logging.getLogger(__name__)

DEFAULT_BATCH_SIZE = 50


def _run_batch(scenario, reference, reps):
    """Correct rejection counts and false-rejection flags per repetition."""
    n, k = scenario.n, scenario.k
    means = scenario.means
    correct = np.empty(len(reps), dtype=np.int64)
    false_any = np.empty(len(reps), dtype=bool)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        for i, rep in enumerate(reps):
            rng = substream(scenario.seed, rep)
            X = generate_data(n, scenario.p, means, random_state=rng)
            if reference is None:
                ref = monte_carlo_reference(n, scenario.n_draws, rng)
            else:
                ref = reference
            rejected = maxt(X, ref, scenario.alpha).rejected
            correct[i] = np.count_nonzero(rejected[:k])
            false_any[i] = rejected[k:].any()
    return correct, false_any


def estimate(scenario, n_jobs=None, subgroup=None, verbose=False,
             batch_size=DEFAULT_BATCH_SIZE):
    r"""
    Estimates power and familywise error of maxT in a scenario.

    Every repetition draws a fresh data matrix (and, for the Monte Carlo
    method, fresh reference sign-flips) from the stream derived from
    ``(scenario.seed, repetition)``, so results do not depend on
    ``n_jobs``.

    Parameters
    ----------
    scenario : Scenario
        The setting to simulate.

    n_jobs : int, None, optional (default None)
        The number of jobs to run repetitions in parallel. If None, will
        not use parallel processing.

    subgroup : Subgroup, optional
        Prebuilt subgroup used instead of building
        ``scenario.construction``. Must have the requested size.

    verbose : boolean, default=False
        Logs the result at INFO level.

    batch_size : int, (default 50)
        Repetitions per joblib task.

    Returns
    -------
    result : PowerResult
        Power is the mean over repetitions of the fraction of the k false
        hypotheses rejected (0 if k = 0), with its standard error over
        repetitions. FWER uses the binomial standard error.

    Examples
    --------
    >>> from sgpower.simulation import Scenario, estimate
    >>> scenario = Scenario(n=8, p=4, mu_value=0.0, prop_false=0.0,
    ...                     n_draws=64, reps=20)
    >>> result = estimate(scenario)
    >>> result.power
    0.0
    """
    if not isinstance(scenario, Scenario):
        raise TypeError(f"Expected a Scenario, got {type(scenario)}")
    level = logging.INFO if verbose else logging.DEBUG
    start = time.perf_counter()

    reference = None
    if scenario.method == SUBGROUP:
        if subgroup is None:
            subgroup = scenario.construction.build(
                random_state=substream(scenario.seed)
            )
        if subgroup.n != scenario.n or \
                subgroup.size != scenario.construction.target_size:
            raise ValueError(
                f"Subgroup of size {subgroup.size} on n={subgroup.n} does "
                f"not match the scenario"
            )
        reference = exact_reference(subgroup)
    if scenario.alpha < 1.0 / scenario.reference_size:
        warnings.warn(
            f"alpha={scenario.alpha} is below 1/M for "
            f"M={scenario.reference_size}; power will be 0",
            UserWarning,
        )

    batches = [range(s, min(s + batch_size, scenario.reps))
               for s in range(0, scenario.reps, batch_size)]
    if n_jobs is None or n_jobs == 1:
        parts = [_run_batch(scenario, reference, b) for b in batches]
    else:
        parts = Parallel(n_jobs=n_jobs)(
            delayed(_run_batch)(scenario, reference, b) for b in batches
        )
    correct = np.concatenate([c for c, _ in parts])
    false_any = np.concatenate([f for _, f in parts])

    reps = scenario.reps
    if scenario.k > 0:
        fractions = correct / scenario.k
        power = float(fractions.mean())
        se_power = float(fractions.std(ddof=1) / np.sqrt(reps)) \
            if reps > 1 else 0.0
    else:
        power, se_power = 0.0, 0.0
    fwer = float(false_any.mean())
    se_fwer = float(np.sqrt(fwer * (1 - fwer) / reps))
    runtime = time.perf_counter() - start

    logger.log(level, "%s: power %.4f (se %.4f), fwer %.4f in %.1fs",
               scenario.label(), power, se_power, fwer, runtime)
    return PowerResult(power=power, fwer=fwer, se_power=se_power,
                       se_fwer=se_fwer, runtime=runtime, scenario=scenario)
