"""
Extractors Module

Data extractors read raw spectrum rows from a source.

Available Extractors:
- BaseExtractor: Abstract base class for all extractors
- CsvExtractor: Reads feature rows plus class token from CSV files
- TextureExtractor: Generates the built-in band-pattern texture task
"""

from .base_extractor import BaseExtractor
from .csv_extractor import CsvExtractor
from .texture_extractor import TextureExtractor, band_pattern

__all__ = [
    'BaseExtractor',
    'CsvExtractor',
    'TextureExtractor',
    'band_pattern',
]
