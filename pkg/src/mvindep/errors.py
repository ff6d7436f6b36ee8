"""Exception hierarchy shared by every module."""


class MvindepError(Exception):
    """Base class for all errors raised by this package."""


class InvalidData(MvindepError, ValueError):
    """Input data is malformed (non-finite, wrong rank, empty)."""


class SizeError(MvindepError, ValueError):
    """Sample count is too small or inconsistent between inputs."""


class DimensionError(MvindepError, ValueError):
    """Column count is not allowed for the requested operation."""


class ZeroVariance(MvindepError, ArithmeticError):
    """A normalizing self-statistic is zero, typically from constant data."""


class DegenerateBandwidth(MvindepError, ArithmeticError):
    """All pairwise distances are zero so no kernel bandwidth exists."""


class NumericalError(MvindepError, ArithmeticError):
    """A linear-algebra step failed even after regularization."""


class SpecError(MvindepError, ValueError):
    """Unknown simulation kind or statistic name, or invalid simulation parameters."""


class ParseError(MvindepError, ValueError):
    """Input file could not be parsed into a numeric matrix."""

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


# Errors caused by what the caller passed in (CLI exit code 2).
VALIDATION_ERRORS = (InvalidData, SizeError, DimensionError, SpecError, ParseError)
