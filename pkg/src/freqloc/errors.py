"""Exception hierarchy shared across the package.

Everything raised on purpose derives from FreqlocError so callers can catch
one base class at CLI boundaries and map it to an exit code.
"""

from __future__ import annotations


class FreqlocError(Exception):
    """Base class for all errors this package raises deliberately."""


class DomainError(FreqlocError):
    """An argument lies outside the mathematical domain of the operation."""


class RangeError(FreqlocError):
    """An argument is valid in principle but outside the supported range."""


class UsageError(FreqlocError):
    """Arguments are individually fine but the combination is not supported."""


class ResolutionError(FreqlocError):
    """A sampling grid is too coarse for the requested computation."""


class TruncationError(FreqlocError):
    """A frequency cutoff discards too much of the signal.

    Carries a suggestion for a cutoff that would pass the internal check.
    """

    def __init__(self, message: str, suggested_k_max: float | None = None):
        super().__init__(message)
        self.suggested_k_max = suggested_k_max


class AccuracyError(FreqlocError):
    """An adaptive scheme stopped before reaching its target accuracy.

    The best estimate reached is kept so callers can still inspect it.
    """

    def __init__(self, message: str, estimate: float | complex | None = None):
        super().__init__(message)
        self.estimate = estimate


class DegeneracyError(FreqlocError):
    """A normalization constant underflowed and the result would be garbage."""


class CalibrationError(FreqlocError):
    """No admissible constant exists within the calibration search range."""


class ConfigError(FreqlocError):
    """A configuration file or value failed validation."""


class ViolationError(FreqlocError):
    """A certified inequality failed on actual data."""
