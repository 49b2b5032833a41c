"""Reference sets of sign-flips for invariance tests"""

# License: MIT

from dataclasses import dataclass, field

import numpy as np

from ..groups import Subgroup, sample_uniform_signflip, full_signflip_group
from ..utils import check_signs, check_generator
from ..groups.signflip import _closure_witness, _format_signs, _lookup_keys, _pack
from ..utils.exceptions import DimensionError, NotASubgroupError

EXACT_SUBGROUP = "ExactSubgroup"
MONTE_CARLO = "MonteCarlo"


@dataclass(frozen=True)
class ReferenceSet:
    """
    The sign-flips a test compares its statistic against.

    Parameters
    ----------
    kind : {'ExactSubgroup', 'MonteCarlo'}
        Whether the elements form a verified subgroup or are the identity
        followed by independent uniform draws from the full group.

    elements : numpy.ndarray of int8, shape (count, n)
        Identity in row 0.

    verified : boolean, default=False
        Skips the closure check of an ExactSubgroup set. Only for elements
        already known to form a subgroup.
    """

    kind: str
    elements: np.ndarray
    verified: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        elements = check_signs(self.elements)
        if elements.ndim == 1:
            elements = elements[np.newaxis, :]
        if not np.all(elements[0] == 1):
            raise ValueError("The first reference element must be the "
                             "identity")
        if self.kind not in (EXACT_SUBGROUP, MONTE_CARLO):
            raise ValueError(f"Unknown reference kind {self.kind!r}")
        if self.kind == EXACT_SUBGROUP and not self.verified:
            _check_subgroup(elements)
        elements.flags.writeable = False
        object.__setattr__(self, "elements", elements)

    @property
    def count(self):
        """Number of elements M, identity included."""
        return self.elements.shape[0]

    @property
    def n(self):
        return self.elements.shape[1]


def _check_subgroup(elements):
    keys = _lookup_keys(_pack(elements))
    if np.unique(keys).size != keys.size:
        raise NotASubgroupError("Subgroup elements must be distinct")
    witness = _closure_witness(elements)
    if witness is not None:
        raise NotASubgroupError(
            "Set is not closed under composition: {} * {} is missing".format(
                _format_signs(witness[0]), _format_signs(witness[1])),
            witness,
        )


def exact_reference(subgroup):
    """
    Reference set made of every element of a subgroup.

    Parameters
    ----------
    subgroup : Subgroup or int
        A verified subgroup, or n to use the full sign-flip group of order
        2^n (small n only).

    Returns
    -------
    reference : ReferenceSet
    """
    if isinstance(subgroup, Subgroup):
        return ReferenceSet(EXACT_SUBGROUP, subgroup.elements, verified=True)
    return ReferenceSet(EXACT_SUBGROUP, full_signflip_group(int(subgroup)),
                        verified=True)


def monte_carlo_reference(n, n_draws, random_state=None):
    """
    The identity followed by ``n_draws - 1`` uniform sign-flips.

    Parameters
    ----------
    n : int
        Number of observations.

    n_draws : int
        Total number of elements M, at least 1.

    random_state : None | int | Generator, optional

    Returns
    -------
    reference : ReferenceSet
    """
    if n_draws < 1:
        raise ValueError("n_draws must be at least 1")
    rng = check_generator(random_state)
    draws = sample_uniform_signflip(n, rng, size=n_draws - 1)
    elements = np.vstack([np.ones((1, n), dtype=np.int8), draws])
    return ReferenceSet(MONTE_CARLO, elements)


def check_reference(reference, n=None):
    """
    Accepts a ReferenceSet or a Subgroup and returns a ReferenceSet.
    """
    if isinstance(reference, Subgroup):
        reference = exact_reference(reference)
    if not isinstance(reference, ReferenceSet):
        raise TypeError(
            "reference must be a ReferenceSet or a Subgroup, "
            f"not {type(reference)}"
        )
    if n is not None and reference.n != n:
        raise DimensionError(
            f"Reference acts on {reference.n} observations, data has {n}"
        )
    return reference
