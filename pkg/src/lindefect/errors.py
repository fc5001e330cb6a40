"""Exception hierarchy shared by the whole package."""


class LindefectError(Exception):
    """Base class for all errors raised by lindefect."""


class UsageError(LindefectError, ValueError):
    """Inputs are incompatible (mismatched fields, rings, shapes, degrees)."""


class NonHomogeneousError(UsageError):
    """A polynomial or vector that must be homogeneous is not."""


class DegenerateInputError(LindefectError, ValueError):
    """A predicate was asked about the zero module."""


class PreconditionError(LindefectError, ValueError):
    """A documented precondition of an operation does not hold."""


class UnsupportedError(LindefectError):
    """The requested computation cannot be certified with the given data."""


class ParseError(UsageError):
    """Malformed job file or polynomial text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
