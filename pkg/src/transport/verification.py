"""
Empirical checks of the inequalities relating subsequence distances to
sequence distances.
"""

from typing import Optional, Sequence as Seq, Tuple

import numpy as np

from ..algebra.bounds import bound_factor
from ..algebra.selectors import SelectorFamily, expected_projection_distance
from ..algebra.sequence import SequenceLike, as_sequence
from ..utils.errors import DimensionError
from .distributions import DistributionLike, as_distribution
from .wasserstein import exact_w1


def _check_permutation(perm: Optional[Seq[int]], size: int) -> np.ndarray:
    if perm is None:
        return np.arange(size)
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (size,) or not np.array_equal(np.sort(perm), np.arange(size)):
        raise ValueError(f"Expected a permutation of {size} selectors")
    return perm


def _permuted_subsequence_distance(fam: SelectorFamily, a: np.ndarray, b: np.ndarray,
                                   sigma: np.ndarray, sigma_prime: np.ndarray) -> float:
    # mean over L of || sigma(L) a - sigma'(L) b ||_1
    sub_a = a[fam.index_matrix[sigma]]
    sub_b = b[fam.index_matrix[sigma_prime]]
    return float(np.abs(sub_a - sub_b).sum(axis=1).mean())


def lemma1_triangle_check(x: SequenceLike, x_prime: SequenceLike, g: SequenceLike,
                          fam: SelectorFamily,
                          sigma: Optional[Seq[int]] = None,
                          sigma_prime: Optional[Seq[int]] = None) -> Tuple[float, float]:
    """
    Both sides of the permuted triangle inequality.

    lhs = E_L ||L^T L x' - L^T L g||
    rhs = E_L ||sigma(L) x - sigma'(L) g|| + E_L ||sigma(L) x - sigma'(L) x'||
    Contract: lhs <= rhs up to rounding.
    """
    x, x_prime, g = as_sequence(x), as_sequence(x_prime), as_sequence(g)
    for seq in (x, x_prime, g):
        if seq.d != fam.d:
            raise DimensionError(f"Family expects d={fam.d}, got d={seq.d}")
    sigma = _check_permutation(sigma, len(fam))
    sigma_prime = _check_permutation(sigma_prime, len(fam))

    lhs = expected_projection_distance(fam, x_prime, g)
    rhs = (_permuted_subsequence_distance(fam, x.values, g.values, sigma, sigma_prime)
           + _permuted_subsequence_distance(fam, x.values, x_prime.values, sigma, sigma_prime))
    return lhs, rhs


def lemma2_selfcoupling_check(A: DistributionLike) -> float:
    """W1(A, A); identical marginals admit the diagonal coupling, so this is 0."""
    A = as_distribution(A)
    return exact_w1(A, A, cap=max(A.m, 1))


def theorem1_deterministic_check(x_prime: SequenceLike, g: SequenceLike,
                                 fam: SelectorFamily) -> Tuple[float, float]:
    """
    Both sides of the deterministic bound ||x' - g||_1 <= factor * E_L ||L^T L x' - L^T L g||_1.
    """
    x_prime, g = as_sequence(x_prime), as_sequence(g)
    if x_prime.d != g.d or x_prime.d != fam.d:
        raise DimensionError(f"Dimension mismatch: d={x_prime.d}, d={g.d}, family d={fam.d}")
    factor = bound_factor(fam)
    lhs = float(np.abs(x_prime.values - g.values).sum())
    rhs = factor * expected_projection_distance(fam, x_prime, g)
    return lhs, rhs
