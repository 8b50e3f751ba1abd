"""
Transport Module

Exact and sliced Wasserstein-1 distances (L1 ground cost) over equal-size
empirical distributions, the sliced gradient, and empirical checks of the
subsequence-to-sequence bounds.
"""

from .distributions import EmpiricalDistribution, ProjectionSet, as_distribution
from .wasserstein import (
    DEFAULT_ASSIGNMENT_CAP,
    exact_w1,
    brute_force_w1,
    exact_w1_1d,
    sliced_w,
    sliced_w_gradient,
    sliced_w_with_gradient,
)
from .verification import (
    lemma1_triangle_check,
    lemma2_selfcoupling_check,
    theorem1_deterministic_check,
)

__all__ = [
    'EmpiricalDistribution',
    'ProjectionSet',
    'as_distribution',
    'DEFAULT_ASSIGNMENT_CAP',
    'exact_w1',
    'brute_force_w1',
    'exact_w1_1d',
    'sliced_w',
    'sliced_w_gradient',
    'sliced_w_with_gradient',
    'lemma1_triangle_check',
    'lemma2_selfcoupling_check',
    'theorem1_deterministic_check',
]
