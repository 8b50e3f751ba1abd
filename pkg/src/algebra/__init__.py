"""
Subsequence algebra: sequences, selectors, selector families, coverage,
reconstruction and the closed-form bound factors.
"""

from .sequence import Sequence, GridShape, as_sequence, grid_to_sequence, sequence_to_grid
from .selectors import (
    Selector,
    SelectorFamily,
    apply_selector,
    project,
    coverage,
    validate_family,
    projections_of,
    reconstruct,
    expected_projection_distance,
    family_to_text,
    family_from_text,
)
from .families import (
    DEFAULT_ENUMERATION_CAP,
    enumerate_all_subsequences,
    enumerate_substrings,
    enumerate_2d_patches,
)
from .bounds import bound_factor, corollary_factors

__all__ = [
    'Sequence',
    'GridShape',
    'as_sequence',
    'grid_to_sequence',
    'sequence_to_grid',
    'Selector',
    'SelectorFamily',
    'apply_selector',
    'project',
    'coverage',
    'validate_family',
    'projections_of',
    'reconstruct',
    'expected_projection_distance',
    'family_to_text',
    'family_from_text',
    'DEFAULT_ENUMERATION_CAP',
    'enumerate_all_subsequences',
    'enumerate_substrings',
    'enumerate_2d_patches',
    'bound_factor',
    'corollary_factors',
]
