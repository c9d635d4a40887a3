"""Exception hierarchy shared by the grammar, index and verifier modules.

Every error also derives from the closest builtin so callers that only know
about ``ValueError`` or ``IndexError`` keep working.
"""


class GcfpError(Exception):
    """Base class for all errors raised by this package."""


class GrammarError(GcfpError, ValueError):
    """A grammar violates one of its structural invariants."""

    def __init__(self, violation):
        self.violation = violation
        super().__init__(str(violation))


class LengthExceededError(GcfpError, OverflowError):
    """A string is longer than the fingerprint configuration allows."""


class OutOfBoundsError(GcfpError, IndexError):
    """A 1-based position lies outside ``[1, N]``."""


class InvalidRangeError(GcfpError, ValueError):
    """A range ``(i, j)`` has ``i > j``."""


class StaleFingerError(GcfpError, ValueError):
    """A finger does not cover either endpoint of the query it is used with."""


class InvalidFingerError(GcfpError, ValueError):
    """A finger handle does not refer to a stored element."""


class ShapeViolationError(GcfpError, ValueError):
    """A Linear SLP has internal nodes that are not children of the root."""


class VerificationOrderError(GcfpError, RuntimeError):
    """Type 2 verification was requested before type 1 succeeded."""
