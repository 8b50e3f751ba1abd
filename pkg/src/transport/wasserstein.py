"""
Wasserstein-1 distances with L1 ground cost between equal-size uniform
empirical distributions, exact and sliced, plus the sliced gradient used by
the patch-matching generator.
"""

import logging
from itertools import permutations
from typing import Sequence as Seq, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from ..utils.errors import AssignmentCapError, DimensionError, UnsupportedMarginalsError
from .distributions import DistributionLike, ProjectionSet, as_distribution

logger = logging.getLogger(__name__)

DEFAULT_ASSIGNMENT_CAP = 2000
BRUTE_FORCE_CAP = 7


def _check_pair(A, B):
    if A.m != B.m:
        raise UnsupportedMarginalsError(
            f"Only equal-size empirical distributions are supported, got m={A.m} and m={B.m}"
        )
    if A.k != B.k:
        raise DimensionError(f"Point dimensions differ: {A.k} vs {B.k}")


def exact_w1(A: DistributionLike, B: DistributionLike, cap: int = DEFAULT_ASSIGNMENT_CAP) -> float:
    """
    Exact W1 under the L1 ground norm, solved as an assignment problem.

    For equal-size uniform marginals an optimal coupling is a permutation, so
    the minimum-cost assignment realises the infimum exactly.
    """
    A = as_distribution(A)
    B = as_distribution(B)
    _check_pair(A, B)
    if A.m > cap:
        raise AssignmentCapError(f"Assignment size {A.m} exceeds the cap of {cap}")

    cost = cdist(A.points, B.points, metric='cityblock')
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum() / A.m)


def brute_force_w1(A: DistributionLike, B: DistributionLike) -> float:
    """Minimum over all permutations; the oracle for exact_w1 on tiny instances."""
    A = as_distribution(A)
    B = as_distribution(B)
    _check_pair(A, B)
    if A.m > BRUTE_FORCE_CAP:
        raise AssignmentCapError(f"Brute force supports m <= {BRUTE_FORCE_CAP}, got {A.m}")

    cost = cdist(A.points, B.points, metric='cityblock')
    rows = np.arange(A.m)
    best = min(cost[rows, list(perm)].sum() for perm in permutations(range(A.m)))
    return float(best / A.m)


def exact_w1_1d(a: Seq[float], b: Seq[float]) -> float:
    """Closed-form 1D W1: mean absolute difference of the sorted samples."""
    a = np.asarray(a, dtype=np.float64).reshape(-1)
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if a.size != b.size:
        raise UnsupportedMarginalsError(f"Length mismatch: {a.size} vs {b.size}")
    if a.size == 0:
        raise DimensionError("Empty samples")
    return float(np.mean(np.abs(np.sort(a, kind='stable') - np.sort(b, kind='stable'))))


def _project_pair(A, B, proj: ProjectionSet) -> Tuple[np.ndarray, np.ndarray]:
    _check_pair(A, B)
    if proj.k != A.k:
        raise DimensionError(f"Projection dimension {proj.k} does not match point dimension {A.k}")
    # (m, p) projections of every point on every direction
    return A.points @ proj.directions.T, B.points @ proj.directions.T


def sliced_w(A: DistributionLike, B: DistributionLike, proj: ProjectionSet) -> float:
    """Mean over directions of the 1D W1 between the projected point sets."""
    A = as_distribution(A)
    B = as_distribution(B)
    proj_a, proj_b = _project_pair(A, B, proj)
    per_direction = np.mean(
        np.abs(np.sort(proj_a, axis=0, kind='stable') - np.sort(proj_b, axis=0, kind='stable')),
        axis=0,
    )
    return float(np.mean(per_direction))


def sliced_w_with_gradient(A: DistributionLike, B: DistributionLike,
                           proj: ProjectionSet) -> Tuple[float, np.ndarray]:
    """
    Sliced W1 and its (sub)gradient with respect to the points of A.

    Each A point is matched to its rank counterpart in B along every
    direction and contributes sign(a.theta - b.theta) * theta / (m * p).
    Ties follow the stable sort order.
    """
    A = as_distribution(A)
    B = as_distribution(B)
    proj_a, proj_b = _project_pair(A, B, proj)
    m, p = proj_a.shape

    order_a = np.argsort(proj_a, axis=0, kind='stable')
    sorted_a = np.take_along_axis(proj_a, order_a, axis=0)
    sorted_b = np.sort(proj_b, axis=0, kind='stable')
    diff = sorted_a - sorted_b
    loss = float(np.mean(np.mean(np.abs(diff), axis=0)))

    signs = np.empty_like(diff)
    np.put_along_axis(signs, order_a, np.sign(diff), axis=0)
    gradient = signs @ proj.directions / (m * p)
    return loss, gradient


def sliced_w_gradient(A: DistributionLike, B: DistributionLike, proj: ProjectionSet) -> np.ndarray:
    """Gradient of sliced_w with respect to each point of A, shape (m, k)."""
    return sliced_w_with_gradient(A, B, proj)[1]
