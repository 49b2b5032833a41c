# License: MIT
#
# Seeded random streams. Every repetition of a simulation draws from its own
# stream, derived from (seed, repetition index) alone, so results do not
# depend on how repetitions are scheduled over workers.

import os

import numpy as np

THREADS_ENV = "SUBGROUP_POWER_THREADS"


def check_generator(random_state=None):
    """
    Turns a seed into a ``numpy.random.Generator``.

    Parameters
    ----------
    random_state : None | int | SeedSequence | Generator
        Passed through ``numpy.random.default_rng``. A Generator is returned
        unchanged.

    Returns
    -------
    rng : numpy.random.Generator
    """
    return np.random.default_rng(random_state)


def substream(seed, *index):
    """
    Returns the generator for a given position below a base seed.

    Parameters
    ----------
    seed : int
        Non-negative base seed (up to 64 bits).

    *index : int
        Path of non-negative integers, e.g. the repetition number.

    Returns
    -------
    rng : numpy.random.Generator
        A generator that depends only on ``seed`` and ``index``.
    """
    seed_seq = np.random.SeedSequence(
        entropy=int(seed), spawn_key=tuple(int(i) for i in index)
    )
    return np.random.Generator(np.random.PCG64DXSM(seed_seq))


def resolve_n_jobs(n_jobs=None):
    """
    Number of joblib workers, falling back on the threads env variable.

    Parameters
    ----------
    n_jobs : int or None
        Explicit worker count. None reads ``SUBGROUP_POWER_THREADS`` and
        defaults to 1.

    Returns
    -------
    n_jobs : int
    """
    if n_jobs is not None:
        return int(n_jobs)
    value = os.environ.get(THREADS_ENV)
    if value is None or value.strip() == "":
        return 1
    try:
        return int(value)
    except ValueError:
        raise ValueError(
            f"{THREADS_ENV} must be an integer, not {value!r}"
        ) from None
