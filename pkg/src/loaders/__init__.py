"""
Loaders Module

Loaders write pipeline results to an output directory.

Available Loaders:
- BaseLoader: Abstract base class for all loaders
- ReportLoader: Score tables, summary, confusion matrices and SVG charts
- GridLoader: Generated grids as CSV rows and PGM previews
"""

from .base_loader import BaseLoader
from .score_report import KINDS, ScoreReport, cell_id
from .report_loader import ReportLoader
from .grid_loader import GridLoader, grid_to_pgm_bytes

__all__ = [
    'BaseLoader',
    'KINDS',
    'ScoreReport',
    'cell_id',
    'ReportLoader',
    'GridLoader',
    'grid_to_pgm_bytes',
]
