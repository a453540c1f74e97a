"""Exception types raised across the package."""


class HullprepError(Exception):
    """Base class for all errors raised by hullprep."""


class EmptyInputError(HullprepError, ValueError):
    """An operation that needs at least one point received none."""


class CoordinateRangeError(HullprepError, ValueError):
    """A coordinate lies outside the range an operation accepts."""


class InputFormatError(HullprepError, ValueError):
    """A point file could not be parsed.

    ``line`` is the 1-based line number of the offending line, or ``None``
    when the error is not tied to a single line.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class OracleBoundError(HullprepError, ValueError):
    """The brute-force hull was asked for more points than its bound allows."""


class IncompatiblePipelineError(HullprepError, ValueError):
    """A preconditioner and hull algorithm cannot be combined."""


class HullMismatchError(HullprepError, AssertionError):
    """The reduced pipeline produced a different hull than the raw one."""


class InsufficientDataError(HullprepError, ValueError):
    """Not enough benchmark records to fit a trend."""
