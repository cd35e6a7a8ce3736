"""Exception hierarchy shared by every module."""


class FinprodError(Exception):
    """Base class for all library errors."""


class CommutativityError(FinprodError):
    """An operation that needs a commutative monoid was given a non-commutative one."""


class IndexLookupError(FinprodError, KeyError):
    """An index is outside the universe of an indexed family."""

    def __str__(self) -> str:
        return Exception.__str__(self)


class LawViolationError(FinprodError):
    """A monoid, semiring, or homomorphism law failed on a sample."""


class PropertyViolationError(FinprodError):
    """An identity that must hold by construction did not."""


class SizeBoundError(FinprodError, ValueError):
    """Input exceeds the configured size bound of an exponential-time routine."""


class ValidationError(FinprodError, ValueError):
    """Malformed input: bad alphabet, bad poset, letter outside alphabet, etc."""


class HypothesisError(FinprodError):
    """A commutation hypothesis required for a well-defined product fails.

    ``pair`` holds the offending letters or nodes.
    """

    def __init__(self, message: str, pair=None) -> None:
        super().__init__(message)
        self.pair = pair


class EmptyTableError(FinprodError, ValueError):
    """Survival data contains no event, so no risk table exists."""
