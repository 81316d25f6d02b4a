"""Command line exceptions; each one knows the exit code it maps to."""

from apps.pattpeak.combinat.exceptions import PattpeakException


EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_IN_SPAN = 3


class CliException(PattpeakException):
    """Base class for errors that end a command with a given exit code."""

    exit_code = EXIT_USAGE

    def __init__(self, *args, output: str = '', **kwargs):
        super().__init__(*args, **kwargs)
        self._output = output

    @property
    def output(self) -> str:
        """Rendered text to print on stdout before exiting, if any."""
        return self._output


class UsageError(CliException):
    """Malformed arguments or input literals."""

    exit_code = EXIT_USAGE


class VerificationFailed(CliException):
    """At least one verification check failed."""

    exit_code = EXIT_VERIFICATION_FAILED


class NotInSpanExit(CliException):
    """A Q-basis expansion was requested for an expression outside the span
    of the Schur Q-functions."""

    exit_code = EXIT_NOT_IN_SPAN
