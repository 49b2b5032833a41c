# License: MIT
"""Errors raised by sgpower.

All errors derive from ``ValueError`` so callers that only guard against
invalid input keep working.
"""


class DimensionError(ValueError):
    """Raised when sign vectors, unit vectors or data disagree in length."""


class NotASubgroupError(ValueError):
    """
    Raised when a set of sign-flips is not closed under composition.

    Parameters
    ----------
    message : str
        Description of the failure.

    witness : tuple of numpy.ndarray or None
        A pair ``(a, b)`` of members whose composition is not a member.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedSizeError(ValueError):
    """Raised when a construction does not support the requested size."""


class ImpossibleSizeError(ValueError):
    """Raised when no sign-flip subgroup of the requested size exists."""


class DomainError(ValueError):
    """Raised when a numeric argument is outside a formula's domain."""
