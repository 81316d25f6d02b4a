"""pattpeak exception classes."""

from datetime import datetime, timezone


class PattpeakException(Exception):
    """Base exception class for pattpeak errors.

    Automatically records the timestamp when the exception occurred, so
    long verification runs can report when a failure surfaced.
    """

    def __init__(self, *args, **_kwargs):
        """Initialize exception with timestamp.

        Args:
            *args: Positional arguments passed to Exception
            **_kwargs: Keyword arguments (unused, accepted for compatibility)
        """
        super().__init__(*args)

        self._at = datetime.now(timezone.utc).isoformat()

    @property
    def at(self) -> str:
        """Return ISO format timestamp of when exception occurred.

        Returns:
            ISO format timestamp string
        """
        return self._at


class InvalidPermutationError(PattpeakException):
    """Raised when a sequence is not a rearrangement of 1..n."""

    pass


class InvalidIndexSetError(PattpeakException):
    """Raised when an index set leaves [n-1] or breaks the peak-set rule."""

    pass


class InvalidPatternSetError(PattpeakException):
    """Raised when a pattern set contains the empty permutation."""

    pass


class InvalidShapeError(PattpeakException):
    """Raised when a (strict) partition or composition is malformed, or when
    an operation receives a shape it does not support."""

    pass


class InvalidTableauError(PattpeakException):
    """Raised when a filling is not a standard (shifted) tableau."""

    pass


class BasisMismatchError(PattpeakException):
    """Raised when a quasisymmetric expression is in the wrong basis."""

    pass


class DegreeMismatchError(PattpeakException):
    """Raised when homogeneous expressions of different degrees are mixed."""

    pass


class UnknownClosedFormError(PattpeakException):
    """Raised when a closed-form identifier does not name a known formula."""

    pass
