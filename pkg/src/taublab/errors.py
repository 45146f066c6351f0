"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ResourceLimitError(ValueError):
    """A size argument exceeds the configured resource guard."""


class CoefficientFileError(ValueError):
    """A coefficient file failed validation.  Carries the offending line."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class SamplingError(ValueError):
    """The requested y-grid step is too coarse for the sequence horizon."""


class ResolutionError(ValueError):
    """The requested Fourier index range exceeds the grid resolution."""


class TermOverflowError(OverflowError):
    """A single series term exceeds the double-precision range."""
