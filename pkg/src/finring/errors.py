"""Exception types shared across the package."""


class FinringError(Exception):
    """Base class for every error raised by this package."""


class ParseError(FinringError):
    """Malformed ring-spec, element literal, or presentation text."""

    def __init__(self, message, text, position):
        super().__init__(f"{message} (at position {position} in {text!r})")
        self.text = text
        self.position = position


class ValidationError(FinringError):
    """Structurally invalid input: n < 2, non-monic modulus, bad table shape."""


class AxiomViolation(ValidationError):
    """A construction recipe produced something that is not a commutative ring."""


class GuardExceeded(FinringError):
    """A resource guard was hit.  Never silently truncate; always raise."""


class NonLocalRingError(FinringError):
    """Operation is only defined over a local ring; decompose first."""


class RingMismatchError(FinringError):
    """Two arguments live over different rings."""


class PreconditionError(FinringError):
    """A stated precondition does not hold for the given arguments."""


class ConsistencyError(FinringError):
    """An internal invariant failed.  Signals a bug, never a valid output."""
