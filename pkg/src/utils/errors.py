"""
Exception hierarchy shared by every stage of the augmentation toolkit.

Stages raise the most specific class available; the CLI in augment_pipeline
maps them onto process exit codes.
"""

from typing import Any, Dict, Optional


class AugmentationError(Exception):
    """Root of all toolkit errors."""


class DimensionError(AugmentationError, ValueError):
    """Raised when sequence, selector or distribution dimensions disagree."""


class CoverageError(AugmentationError, ValueError):
    """Raised when a selector family leaves some index uncovered."""


class EnumerationTooLargeError(AugmentationError, ValueError):
    """Raised when enumerating a family would exceed the configured cap."""


class UnsupportedMarginalsError(AugmentationError, ValueError):
    """Raised for empirical distributions of unequal size."""


class AssignmentCapError(AugmentationError, ValueError):
    """Raised when an exact assignment problem exceeds the configured size cap."""


class ConfigurationError(AugmentationError, ValueError):
    """Raised when a configuration violates its invariants."""


class DataFormatError(AugmentationError, ValueError):
    """Raised for malformed input data."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class EmptyDatasetError(DataFormatError):
    """Raised when an input file holds no data rows."""


class UnknownClassError(DataFormatError):
    """Raised when a class token or class index is not part of the task."""


class SamplingError(AugmentationError, ValueError):
    """Raised when a requested sample size cannot be drawn from a class."""


class DivergenceError(AugmentationError, ArithmeticError):
    """Raised when an optimisation produces a non-finite loss."""

    def __init__(self, message: str, scale_index: Optional[int] = None,
                 epoch: Optional[int] = None):
        self.scale_index = scale_index
        self.epoch = epoch
        super().__init__(message)


class ExperimentError(AugmentationError, RuntimeError):
    """Wraps a failure inside one experiment cell with its (task, ratio, fold) context."""

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None,
                 cause: Optional[BaseException] = None):
        self.context = context or {}
        self.cause = cause
        super().__init__(message)
