"""Exception types shared across the package."""


class AmbientMismatchError(ValueError):
    """Operands live in polynomial rings with different variable counts."""


class ExponentOverflowError(OverflowError):
    """An exponent left the unsigned 32-bit range; never wrap silently."""


class ResourceLimitError(RuntimeError):
    """A configured cap was exceeded; the message names the cap."""

    def __init__(self, message, cap):
        super().__init__(message)
        self.cap = cap


class MonomialParseError(ValueError):
    """Text did not match the monomial or ideal grammar."""
