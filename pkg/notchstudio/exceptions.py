#  Notch Studio - Custom Exceptions
#
#  Typed exception hierarchy so the CLI can map failures to exit codes
#  without pattern-matching on message strings.
#
#  Depends on: (none)
#  Used by:    services/*, utils/*, commands/*

class NotchStudioError(Exception):
    """Base exception for all notch studio errors."""


class DomainError(NotchStudioError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class CoefficientRangeError(NotchStudioError):
    """A coefficient or word does not fit the chosen fixed-point storage."""


class SingularityError(NotchStudioError):
    """The evaluation point coincides with a pole."""


class MeasurementError(NotchStudioError):
    """A response curve does not contain the feature being measured."""


class StabilityError(NotchStudioError):
    """A filter section has a pole on or outside the unit circle."""


class CoefficientFileError(NotchStudioError):
    """A coefficient file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CurveFormatError(NotchStudioError):
    """An insulation curve CSV is malformed or violates curve invariants."""


class AudioFormatError(NotchStudioError):
    """A WAV file is not 16-bit PCM mono at the expected sample rate."""
