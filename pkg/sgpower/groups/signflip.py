"""The sign-flipping group acting on the rows of a data matrix"""

# License: MIT

import numpy as np

from ..utils import check_signs, check_iota, check_data, check_generator
from ..utils.exceptions import NotASubgroupError

ORACLE = "Oracle"
NONPOSITIVE = "NonPositive"
GENERAL = "General"

LEAK_TOL = 1e-12
MAX_ENUMERATION_N = 20


def compose(a, b):
    """
    Composes two sign-flips (entrywise product of the signs).

    Parameters
    ----------
    a, b : array-like, shape (n,)
        Sign-flips of equal length. Either may also be a stack of shape
        (n_elements, n), in which case the product broadcasts.

    Returns
    -------
    c : numpy.ndarray of int8, shape (n,)
        The composed sign-flip. The all +1 vector is the identity and every
        element is its own inverse.

    Examples
    --------
    >>> from sgpower.groups import compose
    >>> compose([1, -1, 1, -1], [1, 1, -1, -1])
    array([ 1, -1, -1,  1], dtype=int8)
    """
    a = check_signs(a)
    b = check_signs(b, n=a.shape[-1])
    return a * b


def leak(signs, iota=None):
    r"""
    Computes the leak :math:`\iota' S \iota = \sum_i \iota_i^2 s_i`.

    Parameters
    ----------
    signs : array-like, shape (n,) or (n_elements, n)
        One sign-flip or a stack of them.

    iota : array-like, shape (n,), optional (default canonical)
        Unit vector. Defaults to :math:`n^{-1/2}(1, \dots, 1)'`, for which
        the leak is the mean of the signs.

    Returns
    -------
    leak : float or numpy.ndarray, shape (n_elements,)
        Values in [-1, 1]. The identity has leak 1.
    """
    signs = check_signs(signs)
    iota = check_iota(iota, n=signs.shape[-1])
    return signs @ (iota * iota)


def apply(signs, X):
    """
    Applies a sign-flip to the rows of a data matrix.

    Parameters
    ----------
    signs : array-like, shape (n,)
        The sign-flip.

    X : array-like, shape (n, p)
        Data matrix with one observation per row.

    Returns
    -------
    X_flipped : numpy.ndarray, shape (n, p)
        Row i multiplied by ``signs[i]``. Applying the same flip twice
        returns X exactly.
    """
    signs = check_signs(signs)
    if signs.ndim != 1:
        raise ValueError("apply expects a single sign-flip")
    X = check_data(X, n_samples=signs.shape[0])
    return signs[:, np.newaxis] * X


def sample_uniform_signflip(n, random_state=None, size=None):
    """
    Draws sign-flips uniformly from the full group of order 2^n.

    Parameters
    ----------
    n : int
        Number of observations, at least 1.

    random_state : None | int | Generator, optional
        Source of randomness. Each sign is +1 or -1 with probability 1/2.

    size : int or None
        Number of independent draws. If None a single vector is returned.

    Returns
    -------
    signs : numpy.ndarray of int8, shape (n,) or (size, n)
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = check_generator(random_state)
    shape = (n,) if size is None else (size, n)
    bits = rng.integers(0, 2, size=shape, dtype=np.int8)
    return (1 - 2 * bits).astype(np.int8)


def full_signflip_group(n):
    """
    Enumerates all 2^n sign-flips, identity first.

    Parameters
    ----------
    n : int
        Number of observations. Limited to small n.

    Returns
    -------
    elements : numpy.ndarray of int8, shape (2**n, n)
        Row k flips the observations at the set bits of k.
    """
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise ValueError(
            f"Full enumeration supports 1 <= n <= {MAX_ENUMERATION_N}, "
            f"not {n}"
        )
    bits = (np.arange(2 ** n)[:, np.newaxis] >> np.arange(n)) & 1
    return (1 - 2 * bits).astype(np.int8)


def _pack(elements):
    """Bit-packs the negative entries. Composition becomes XOR."""
    return np.packbits(np.asarray(elements) < 0, axis=-1)


def _lookup_keys(packed):
    """Hashable/sortable keys for packed rows of any width."""
    n_bytes = packed.shape[-1]
    if n_bytes <= 8:
        padded = np.zeros(packed.shape[:-1] + (8,), dtype=np.uint8)
        padded[..., :n_bytes] = packed
        return padded.view(np.uint64)[..., 0]
    flat = packed.reshape(-1, n_bytes)
    keys = np.empty(flat.shape[0], dtype=object)
    keys[:] = [row.tobytes() for row in flat]
    return keys.reshape(packed.shape[:-1])


def _isin(query_keys, member_keys):
    if query_keys.dtype == object:
        members = set(member_keys.tolist())
        return np.array([k in members for k in query_keys.ravel()],
                        dtype=bool).reshape(query_keys.shape)
    return np.isin(query_keys, member_keys)


def _closure_witness(elements, block_size=64):
    """
    Returns the first pair (a, b) with a*b outside the set, else None.
    """
    packed = _pack(elements)
    member_keys = _lookup_keys(packed)
    for start in range(0, len(packed), block_size):
        block = packed[start:start + block_size]
        products = block[:, np.newaxis, :] ^ packed[np.newaxis, :, :]
        inside = _isin(_lookup_keys(products), member_keys)
        if not inside.all():
            i, j = np.argwhere(~inside)[0]
            return elements[start + i], elements[j]
    return None


class Subgroup:
    r"""
    A finite subgroup of sign-flips with cached leak values.

    Instances are created by :func:`classify` (or the constructions in
    :mod:`sgpower.groups`) and never change afterwards.

    Parameters
    ----------
    elements : numpy.ndarray of int8, shape (size, n)
        Verified members, identity in row 0.

    leaks : numpy.ndarray, shape (size,)
        Leak of every member.

    kind : {'Oracle', 'NonPositive', 'General'}
        Leak class of the non-identity members.

    iota : numpy.ndarray, shape (n,)
        Unit vector the leaks were computed with.

    Attributes
    ----------
    n : int
        Length of every sign vector.

    size : int
        Number of elements.

    max_leak : float
        Largest leak over the non-identity elements, ``-inf`` for the
        trivial subgroup.
    """

    def __init__(self, elements, leaks, kind, iota):
        self.elements = np.array(elements, dtype=np.int8)
        self.leaks = np.array(leaks, dtype=float)
        self.iota = np.array(iota, dtype=float)
        for arr in (self.elements, self.leaks, self.iota):
            arr.flags.writeable = False
        self.kind = kind

    @property
    def n(self):
        return self.elements.shape[1]

    @property
    def size(self):
        return self.elements.shape[0]

    @property
    def max_leak(self):
        if self.size == 1:
            return -np.inf
        return float(self.leaks[1:].max())

    def leak_spectrum(self, decimals=12):
        """
        Counts elements per leak value.

        Returns
        -------
        spectrum : dict
            Maps each (rounded) leak value to its multiplicity.
        """
        values, counts = np.unique(np.round(self.leaks, decimals),
                                   return_counts=True)
        return {float(v) + 0.0: int(c) for v, c in zip(values, counts)}

    def issubset(self, other):
        """True if every element of this subgroup is an element of other."""
        if self.n != other.n:
            return False
        return bool(np.all(_isin(_lookup_keys(_pack(self.elements)),
                                 _lookup_keys(_pack(other.elements)))))

    def __len__(self):
        return self.size

    def __contains__(self, signs):
        signs = check_signs(signs, n=self.n)
        return bool(_isin(_lookup_keys(_pack(signs[np.newaxis, :])),
                          _lookup_keys(_pack(self.elements)))[0])

    def __repr__(self):
        return (f"Subgroup(n={self.n}, size={self.size}, kind={self.kind}, "
                f"max_leak={self.max_leak:.6g})")


def classify(elements, iota=None, tol=LEAK_TOL):
    r"""
    Verifies a set of sign-flips is a subgroup and assigns its leak class.

    Parameters
    ----------
    elements : array-like, shape (size, n)
        Candidate members. Duplicates are dropped; the identity is moved to
        the front, the order of the others is kept.

    iota : array-like, shape (n,), optional (default canonical)
        Unit vector for the leaks.

    tol : float, (default 1e-12)
        Leaks with absolute value below ``tol`` count as zero.

    Returns
    -------
    subgroup : Subgroup
        With ``kind`` 'Oracle' if every non-identity leak is 0,
        'NonPositive' if every non-identity leak is at most 0 and 'General'
        otherwise.

    Raises
    ------
    NotASubgroupError
        If the set is not closed under composition; ``witness`` holds a
        pair (a, b) whose product is not a member.

    Examples
    --------
    >>> from sgpower.groups import classify
    >>> classify([[1, 1], [-1, -1]]).kind
    'NonPositive'
    """
    elements = check_signs(elements)
    if elements.ndim == 1:
        elements = elements[np.newaxis, :]
    n = elements.shape[1]
    iota = check_iota(iota, n=n)

    _, first = np.unique(_lookup_keys(_pack(elements)), return_index=True)
    elements = elements[np.sort(first)]

    is_identity = np.all(elements == 1, axis=1)
    if not is_identity.any():
        raise NotASubgroupError(
            "Set does not contain the identity", (elements[0], elements[0])
        )
    elements = np.vstack([elements[is_identity], elements[~is_identity]])

    witness = _closure_witness(elements)
    if witness is not None:
        raise NotASubgroupError(
            "Set is not closed under composition: {} * {} is missing".format(
                _format_signs(witness[0]), _format_signs(witness[1])),
            witness,
        )

    leaks = elements @ (iota * iota)
    others = leaks[1:]
    if np.all(np.abs(others) <= tol):
        kind = ORACLE
    elif np.all(others <= tol):
        kind = NONPOSITIVE
    else:
        kind = GENERAL

    return Subgroup(elements, leaks, kind, iota)


def _format_signs(signs):
    return "".join("+" if s > 0 else "-" for s in signs)

