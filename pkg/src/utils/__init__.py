"""
Utilities shared across the toolkit: errors, logging and seed derivation.
"""

from .errors import (
    AugmentationError,
    DimensionError,
    CoverageError,
    EnumerationTooLargeError,
    UnsupportedMarginalsError,
    AssignmentCapError,
    ConfigurationError,
    DataFormatError,
    EmptyDatasetError,
    UnknownClassError,
    SamplingError,
    DivergenceError,
    ExperimentError,
)
from .logging_setup import setup_logging
from .seeding import make_rng, derive_seed

__all__ = [
    'AugmentationError',
    'DimensionError',
    'CoverageError',
    'EnumerationTooLargeError',
    'UnsupportedMarginalsError',
    'AssignmentCapError',
    'ConfigurationError',
    'DataFormatError',
    'EmptyDatasetError',
    'UnknownClassError',
    'SamplingError',
    'DivergenceError',
    'ExperimentError',
    'setup_logging',
    'make_rng',
    'derive_seed',
]
