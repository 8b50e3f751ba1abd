from itertools import combinations
from math import comb

from ..utils.errors import DimensionError, EnumerationTooLargeError
from .selectors import Selector, SelectorFamily
from .sequence import GridShape

DEFAULT_ENUMERATION_CAP = 10 ** 6


def _check_cap(count: int, cap: int, what: str):
    if count > cap:
        raise EnumerationTooLargeError(
            f"{what} would enumerate {count} selectors, above the cap of {cap}"
        )


def enumerate_all_subsequences(d: int, d_prime: int,
                               cap: int = DEFAULT_ENUMERATION_CAP) -> SelectorFamily:
    """
    The family of all C(d, d') subsequences of length d'.

    Coverage of this family is the constant C(d-1, d'-1).
    """
    if not 1 <= d_prime <= d:
        raise DimensionError(f"Need 1 <= d' <= d, got d={d}, d'={d_prime}")
    _check_cap(comb(d, d_prime), cap, f"All subsequences (d={d}, d'={d_prime})")
    return SelectorFamily(tuple(
        Selector(indices, d) for indices in combinations(range(d), d_prime)
    ))


def enumerate_substrings(d: int, d_prime: int, stride: int = 1,
                         cap: int = DEFAULT_ENUMERATION_CAP) -> SelectorFamily:
    """
    Contiguous windows of length d' starting every `stride` positions.

    A final window ending at d-1 is appended when the stride does not land on
    it, so the family always covers every index.
    """
    if not 1 <= d_prime <= d:
        raise DimensionError(f"Need 1 <= d' <= d, got d={d}, d'={d_prime}")
    if stride < 1:
        raise DimensionError(f"Stride must be positive, got {stride}")

    starts = list(range(0, d - d_prime + 1, stride))
    if starts[-1] != d - d_prime:
        starts.append(d - d_prime)
    _check_cap(len(starts), cap, f"Substrings (d={d}, d'={d_prime}, stride={stride})")
    return SelectorFamily(tuple(
        Selector(tuple(range(s, s + d_prime)), d) for s in starts
    ))


def enumerate_2d_patches(shape: GridShape,
                         cap: int = DEFAULT_ENUMERATION_CAP) -> SelectorFamily:
    """
    All n'xn' contiguous windows of an nxn grid, as row-major index sets.

    Windows are ordered by top-left corner, row-major, matching the patch
    order of generators.patches.extract_patches.
    """
    n, k = shape.n, shape.n_prime
    _check_cap(shape.patch_count, cap, f"2D patches (n={n}, n'={k})")

    selectors = []
    for top in range(n - k + 1):
        for left in range(n - k + 1):
            indices = tuple(
                (top + i) * n + (left + j) for i in range(k) for j in range(k)
            )
            selectors.append(Selector(indices, shape.d))
    return SelectorFamily(tuple(selectors))
