"""Exception hierarchy.

Everything derives from :class:`HDBFError`; the data and domain errors also
derive from :class:`ValueError` so generic callers can catch them as such.
"""


class HDBFError(Exception):
    """Base class for all package errors."""


class DataValidationError(HDBFError, ValueError):
    """Input matrices are malformed, non-finite or inconsistent."""


class DomainError(HDBFError, ValueError):
    """A distribution function was called outside its domain."""


class EstimatorUndefinedError(HDBFError):
    """A group is too small for the unbiased trace estimators (n_i < 3)."""


class EstimatorDegenerateError(HDBFError):
    """An estimated approximation parameter has a nonpositive denominator."""

    def __init__(self, message, traces=None):
        super().__init__(message)
        self.traces = traces


class TestUndefinedError(HDBFError):
    """A test statistic cannot be standardized or calibrated on this data."""

    __test__ = False  # not a pytest class

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ConvergenceError(HDBFError, ArithmeticError):
    """A continued fraction or root search failed to converge."""


class ConfigError(HDBFError, ValueError):
    """A simulation or oracle configuration is invalid."""


class ParseError(HDBFError, ValueError):
    """A dataset or configuration file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
