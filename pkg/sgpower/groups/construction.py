"""Constructions of leak-minimizing sign-flip subgroups"""

# License: MIT

import logging
import warnings
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from scipy.linalg import hadamard

from .signflip import (classify, sample_uniform_signflip, _pack,
                       _lookup_keys, _isin, ORACLE)
from ..utils import check_iota, check_generator, is_power_of_two
from ..utils.exceptions import UnsupportedSizeError, ImpossibleSizeError

logger = logging.getLogger(__name__)

SYLVESTER = "sylvester"
NONPOSITIVE = "nonpositive"
NESTED = "nested"
GREEDY = "greedy"

_STRATEGY_ALIASES = {
    "sylvester": SYLVESTER,
    "sylvesteroracle": SYLVESTER,
    "oracle": SYLVESTER,
    "nonpositive": NONPOSITIVE,
    "non-positive": NONPOSITIVE,
    "nested": NESTED,
    "nestedchain": NESTED,
    "greedy": GREEDY,
    "greedyextend": GREEDY,
}

DEFAULT_POOL_SIZE = 512


def sylvester_oracle(n, iota=None):
    r"""
    The oracle subgroup formed by the rows of the Sylvester-Hadamard matrix.

    Parameters
    ----------
    n : int
        Number of observations, a power of two.

    iota : array-like, shape (n,), optional (default canonical)
        Unit vector for the leaks.

    Returns
    -------
    subgroup : Subgroup
        The n rows of :math:`H_n`, identity first. Row k is the character
        of :math:`(\mathbb{Z}/2)^{\log_2 n}` indexed by k, so the product of
        rows i and j is row ``i ^ j``. Every non-identity row has exactly
        n/2 negative entries and hence leak 0 for the canonical iota.

    Raises
    ------
    UnsupportedSizeError
        If n is not a power of two. Use the greedy strategy instead.

    Examples
    --------
    >>> from sgpower.groups import sylvester_oracle
    >>> sylvester_oracle(4).elements
    array([[ 1,  1,  1,  1],
           [ 1, -1,  1, -1],
           [ 1,  1, -1, -1],
           [ 1, -1, -1,  1]], dtype=int8)
    """
    if not is_power_of_two(n):
        raise UnsupportedSizeError(
            f"Sylvester construction needs n to be a power of two, not {n}."
            " Use the greedy strategy for other sample sizes."
        )
    return classify(hadamard(n, dtype=np.int8), iota=iota)


def nonpositive_from_oracle(subgroup):
    """
    Doubles an oracle subgroup by adding the negation of every element.

    Parameters
    ----------
    subgroup : Subgroup
        An oracle subgroup.

    Returns
    -------
    subgroup : Subgroup
        ``S`` followed by ``-S``. The non-identity leaks are 0, except for
        the negated identity with leak -1.
    """
    if subgroup.kind != ORACLE:
        raise ValueError(
            f"Expected an Oracle subgroup, got {subgroup.kind}"
        )
    elements = np.vstack([subgroup.elements, -subgroup.elements])
    return classify(elements, iota=subgroup.iota)


def greedy_extend(subgroup, target_size, iota=None,
                  pool_size=DEFAULT_POOL_SIZE, random_state=None,
                  n_jobs=None, return_history=False, verbose=False):
    r"""
    Grows a subgroup by repeatedly adding the generator of lowest leak.

    Each step draws a pool of sign vectors with as many -1 entries as
    possible without exceeding n/2, and adds the candidate ``g`` that
    minimizes the largest leak in the coset ``g S``. This doubles the size.

    Parameters
    ----------
    subgroup : Subgroup
        Starting subgroup, kept as a prefix of the result.

    target_size : int
        Requested size, ``|S|`` times a power of two.

    iota : array-like, shape (n,), optional (default ``subgroup.iota``)
        Unit vector for the leaks.

    pool_size : int, default=512
        Number of candidate generators per step.

    random_state : None | int | Generator, optional
        Seed for the candidate pools. Ties go to the first candidate.

    n_jobs : int, None, optional (default None)
        Number of jobs to score the pool in parallel. The scores are
        reduced in candidate order, so the result does not depend on it.

    return_history : boolean, default=False
        If True, also returns the subgroup after every doubling.

    verbose : boolean, default=False
        Logs the leak reached at every step at INFO level.

    Returns
    -------
    subgroup : Subgroup
        Closed subgroup of size ``target_size``. Its ``max_leak`` is the
        achieved leak.

    history : list of Subgroup
        The starting subgroup and every doubling. Only returned if
        ``return_history=True``.
    """
    n = subgroup.n
    iota = subgroup.iota if iota is None else check_iota(iota, n=n)
    if n < 63 and target_size > 2 ** n:
        raise ImpossibleSizeError(
            f"No sign-flip subgroup of size {target_size} exists for n={n}"
        )
    ratio = target_size // subgroup.size
    if target_size % subgroup.size != 0 or not is_power_of_two(ratio):
        raise ValueError(
            f"target_size must be a power-of-two multiple of {subgroup.size}"
        )
    if pool_size < 1:
        raise ValueError("pool_size must be a positive integer")

    rng = check_generator(random_state)
    weights = iota * iota
    level = logging.INFO if verbose else logging.DEBUG

    current = subgroup
    if not np.array_equal(current.iota, iota):
        current = classify(current.elements, iota=iota)
    history = [current]
    while current.size < target_size:
        generator = _best_generator(current, weights, pool_size, rng, n_jobs)
        elements = np.vstack([current.elements,
                              generator * current.elements])
        current = classify(elements, iota=iota)
        history.append(current)
        logger.log(level, "greedy step: size %d, max leak %.6g",
                   current.size, current.max_leak)

    if return_history:
        return current, history
    return current


def _balanced_pool(n, pool_size, rng):
    base = np.ones(n, dtype=np.int8)
    base[: n // 2] = -1
    return rng.permuted(np.tile(base, (pool_size, 1)), axis=1)


def _coset_scores(candidates, weighted_elements):
    """Largest leak in each coset g S."""
    return (candidates @ weighted_elements.T).max(axis=1)


def _best_generator(subgroup, weights, pool_size, rng, n_jobs,
                    max_attempts=100):
    member_keys = _lookup_keys(_pack(subgroup.elements))
    weighted = subgroup.elements * weights
    for attempt in range(max_attempts):
        if attempt == 0:
            pool = _balanced_pool(subgroup.n, pool_size, rng)
        else:
            pool = sample_uniform_signflip(subgroup.n, rng, size=pool_size)

        if n_jobs is None or n_jobs == 1:
            scores = _coset_scores(pool, weighted)
        else:
            chunks = np.array_split(np.arange(pool_size), abs(n_jobs) * 4)
            parts = Parallel(n_jobs=n_jobs)(
                delayed(_coset_scores)(pool[idx], weighted)
                for idx in chunks if len(idx) > 0
            )
            scores = np.concatenate(parts)

        scores[_isin(_lookup_keys(_pack(pool)), member_keys)] = np.inf
        best = int(np.argmin(scores))
        if np.isfinite(scores[best]):
            return pool[best]
        if attempt == 0:
            warnings.warn(
                "Every balanced candidate is already in the subgroup; "
                "drawing candidates from the full group instead.",
                RuntimeWarning,
            )
    raise RuntimeError(
        f"No candidate outside the subgroup after {max_attempts} pools"
    )


def nested_chain(n, sizes, iota=None, pool_size=DEFAULT_POOL_SIZE,
                 random_state=None, n_jobs=None, verbose=False):
    """
    Builds nested subgroups of increasing size.

    Sizes up to n are prefixes of the Sylvester rows (generated by the first
    log2(size) characters), size 2n is the non-positive doubling of the full
    Sylvester group and larger sizes are greedy extensions of it.

    Parameters
    ----------
    n : int
        Number of observations, a power of two.

    sizes : list of int
        Strictly ascending powers of two.

    iota, pool_size, random_state, n_jobs, verbose
        Passed to :func:`greedy_extend` for sizes above 2n.

    Returns
    -------
    chain : list of Subgroup
        One subgroup per requested size, each containing the previous one.

    Examples
    --------
    >>> from sgpower.groups import nested_chain
    >>> [len(s) for s in nested_chain(4, [1, 2, 4, 8])]
    [1, 2, 4, 8]
    """
    if not is_power_of_two(n):
        raise UnsupportedSizeError(
            f"Nested chains need n to be a power of two, not {n}"
        )
    sizes = [int(s) for s in sizes]
    if len(sizes) == 0:
        raise ValueError("sizes must not be empty")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"sizes must be strictly ascending, got {sizes}")
    for size in sizes:
        if not is_power_of_two(size):
            raise ValueError(f"sizes must be powers of two, got {size}")
        if n < 63 and size > 2 ** n:
            raise ImpossibleSizeError(
                f"No sign-flip subgroup of size {size} exists for n={n}"
            )

    rows = hadamard(n, dtype=np.int8)
    chain = []
    greedy_sizes = [s for s in sizes if s > 2 * n]
    for size in sizes:
        if size <= n:
            chain.append(classify(rows[:size], iota=iota))
        elif size == 2 * n:
            chain.append(nonpositive_from_oracle(classify(rows, iota=iota)))

    if greedy_sizes:
        start = nonpositive_from_oracle(classify(rows, iota=iota))
        _, history = greedy_extend(
            start, greedy_sizes[-1], pool_size=pool_size,
            random_state=random_state, n_jobs=n_jobs, return_history=True,
            verbose=verbose,
        )
        by_size = {s.size: s for s in history}
        chain.extend(by_size[size] for size in greedy_sizes)

    return chain


@dataclass(frozen=True)
class ConstructionSpec:
    """
    What subgroup to build.

    Parameters
    ----------
    n : int
        Number of observations.

    target_size : int
        Requested number of elements, at least 1.

    strategy : {'sylvester', 'nonpositive', 'nested', 'greedy'}
        Construction route. The names 'SylvesterOracle', 'NonPositive',
        'NestedChain' and 'GreedyExtend' are accepted as well.

    pool_size : int, default=512
        Candidate pool of the greedy steps.
    """

    n: int
    target_size: int
    strategy: str = NESTED
    pool_size: int = DEFAULT_POOL_SIZE

    def __post_init__(self):
        key = str(self.strategy).replace("_", "").lower()
        if key not in _STRATEGY_ALIASES:
            raise ValueError(
                f"Unknown strategy {self.strategy!r}. Use one of "
                f"{[SYLVESTER, NONPOSITIVE, NESTED, GREEDY]}"
            )
        object.__setattr__(self, "strategy", _STRATEGY_ALIASES[key])
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.target_size < 1:
            raise ValueError("target_size must be at least 1")
        if self.strategy == SYLVESTER and self.target_size > self.n:
            raise ImpossibleSizeError(
                f"Oracle subgroups have at most n={self.n} elements"
            )
        if self.strategy == NONPOSITIVE and self.target_size > 2 * self.n:
            raise ImpossibleSizeError(
                f"Non-positive subgroups have at most 2n={2 * self.n} "
                "elements"
            )

    def build(self, iota=None, random_state=None, n_jobs=None):
        """
        Constructs the subgroup.

        Parameters
        ----------
        iota : array-like, shape (n,), optional (default canonical)

        random_state : None | int | Generator, optional
            Seed for greedy steps.

        n_jobs : int, None, optional (default None)

        Returns
        -------
        subgroup : Subgroup
        """
        n, size = self.n, self.target_size
        if self.strategy == SYLVESTER:
            if not is_power_of_two(size):
                raise ValueError(f"Sylvester sizes are powers of two: {size}")
            if size == n:
                return sylvester_oracle(n, iota=iota)
            return nested_chain(n, [size], iota=iota)[0]

        if self.strategy == NONPOSITIVE:
            if size < 2 or not is_power_of_two(size):
                raise ValueError(
                    f"Non-positive sizes are powers of two >= 2: {size}"
                )
            half = ConstructionSpec(n, size // 2, SYLVESTER)
            return nonpositive_from_oracle(half.build(iota=iota))

        if is_power_of_two(n):
            return nested_chain(
                n, [size], iota=iota, pool_size=self.pool_size,
                random_state=random_state, n_jobs=n_jobs,
            )[0]

        if self.strategy == NESTED:
            raise UnsupportedSizeError(
                f"Nested chains need n to be a power of two, not {n}. "
                "Use the greedy strategy instead."
            )
        trivial = classify(np.ones((1, n), dtype=np.int8), iota=iota)
        return greedy_extend(
            trivial, size, pool_size=self.pool_size,
            random_state=random_state, n_jobs=n_jobs,
        )
