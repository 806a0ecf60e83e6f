"""Exception hierarchy shared by the whole package."""


class NumpolyError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(NumpolyError, ValueError):
    """An argument is outside the domain an operation is defined on."""


class ParseError(NumpolyError, ValueError):
    """Malformed expression or serialized value."""


class NotDivisibleError(NumpolyError):
    """Exact division requested where the quotient leaves the ring.

    Carries the offending index (binomial index, exponent, or residue)
    when one is known.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class UnsupportedPresentationError(NumpolyError):
    """A finitely presented algebra outside the shapes this package handles."""


class ShapeError(NumpolyError):
    """Matrix or presentation dimensions do not match the operation."""


class PrecisionError(NumpolyError):
    """Requested data is not determined at the stored precision."""


class NotIdempotentError(NumpolyError):
    """Input fails the approximate-idempotency precondition of a lifting step."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class FalsificationError(NumpolyError):
    """A certified identity failed; this invalidates a structural claim."""
