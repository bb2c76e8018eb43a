"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: resource limits exit 3, input and
precondition problems exit 2, internal consistency alarms exit 1.
"""


class InvredError(Exception):
    """Base class for all errors raised by this package."""


class ShapeMismatchError(InvredError, ValueError):
    """Operands disagree on modulus, variable count, or dimensions."""


class DomainError(InvredError, ValueError):
    """An argument is outside the domain of the operation."""


class SingularMatrixError(InvredError, ValueError):
    """A matrix that must be invertible over GF(p) is singular."""


class FormatError(InvredError, ValueError):
    """An input file failed validation; the message names the bad field."""


class PreconditionError(InvredError, ValueError):
    """A stated precondition of a pipeline operation failed.

    ``code`` is a short stable identifier for the specific failed check.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class ResourceLimitError(InvredError):
    """A configured resource guard was exceeded."""


class GroupTooLargeError(ResourceLimitError):
    """Group closure exceeded the element cap."""

    def __init__(self, cap: int):
        super().__init__(f"group closure exceeds cap of {cap} elements")
        self.cap = cap


class SliceLimitError(ResourceLimitError):
    """A graded slice is larger than the configured dimension limit."""


class FixedSpaceLimitError(ResourceLimitError):
    """The fixed space has too many rational points to enumerate."""


class InternalConsistencyError(InvredError):
    """A result that is guaranteed by construction failed verification.

    This always indicates a bug in this package, never bad user input.
    """


class TheoremViolationError(InvredError):
    """A computed value contradicts a proven identity (alarm condition)."""
