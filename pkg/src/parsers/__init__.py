"""
Parsers Module

Parsers convert raw records from extractors into a LabeledDataset that
transformers can work with.

Available Parsers:
- BaseParser: Abstract base class for all parsers
- SpectrumParser: Parses feature rows plus class token, with label code maps
"""

from .base_parser import BaseParser
from .spectrum_parser import BUI_CODES, CLASS_NAMES, SpectrumParser, default_token_map

__all__ = [
    'BaseParser',
    'SpectrumParser',
    'BUI_CODES',
    'CLASS_NAMES',
    'default_token_map',
]

# Version info
__version__ = '1.0.0'
