from typing import Tuple

from ..utils.errors import CoverageError, DimensionError
from .selectors import SelectorFamily, coverage


def bound_factor(fam: SelectorFamily) -> float:
    """|f_L| / min_i coverage_i, the multiplier from subsequence distance to sequence distance."""
    min_coverage = int(coverage(fam).min())
    if min_coverage < 1:
        raise CoverageError("Bound factor is undefined for a family with uncovered indices")
    return len(fam) / min_coverage


def corollary_factors(d: int, d_prime: int, n: int, n_prime: int) -> Tuple[float, float]:
    """
    Closed-form factors (d/d', (n-n'+1)^2) for the all-subsequence and 2D patch families.
    """
    if not 1 <= d_prime <= d:
        raise DimensionError(f"Need 1 <= d' <= d, got d={d}, d'={d_prime}")
    if not 1 <= n_prime <= n:
        raise DimensionError(f"Need 1 <= n' <= n, got n={n}, n'={n_prime}")
    return d / d_prime, float((n - n_prime + 1) ** 2)
