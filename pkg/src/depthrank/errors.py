"""Exception types shared across the package."""


class DepthRankError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(DepthRankError, ValueError):
    """A caller violated an operation's precondition (bad shape, non-finite
    value, out-of-range argument, ...)."""


class DatasetFormatError(DepthRankError):
    """A dataset or params file could not be parsed.

    Carries the 1-based line number of the offending record when known.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DatasetVersionError(DatasetFormatError):
    """The file declares a format version this build does not understand."""


class TrainingDivergedError(DepthRankError):
    """Training produced a non-finite loss or gradient.

    ``trace`` holds the trace of the epochs completed before the abort;
    ``params`` holds the last finite parameter vector, so callers can still
    emit a partial report.
    """

    def __init__(self, message: str, trace=None, params=None):
        super().__init__(message)
        self.trace = trace
        self.params = params
