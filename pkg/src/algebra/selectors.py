"""
Subsequence selectors and selector families.

A selector is the sorted index list of a logical matrix L with (L^T L) <= I;
a family is a set of such selectors sharing d and d'. Everything here is pure
and works on read-only data.
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence as Seq, Tuple

import numpy as np

from ..utils.errors import CoverageError, DimensionError
from .sequence import Sequence, SequenceLike, as_sequence


@dataclass(frozen=True)
class Selector:
    """Strictly increasing indices into a length-d sequence."""

    indices: Tuple[int, ...]
    d: int

    def __post_init__(self):
        indices = tuple(int(i) for i in self.indices)
        if not indices:
            raise DimensionError("Selector must pick at least one index")
        if self.d < 1:
            raise DimensionError(f"Selector dimension must be positive, got {self.d}")
        if indices[0] < 0 or indices[-1] >= self.d:
            raise DimensionError(f"Selector indices must lie in [0, {self.d})")
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise DimensionError(f"Selector indices must be strictly increasing: {indices}")
        object.__setattr__(self, 'indices', indices)

    @property
    def d_prime(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class SelectorFamily:
    """
    A non-empty, duplicate-free set of selectors with common d and d'.

    Coverage is not enforced here; use validate_family() before relying on
    reconstruction or bound factors.
    """

    selectors: Tuple[Selector, ...]
    index_matrix: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        selectors = tuple(self.selectors)
        if not selectors:
            raise DimensionError("Selector family must not be empty")
        d = selectors[0].d
        d_prime = selectors[0].d_prime
        for selector in selectors:
            if selector.d != d or selector.d_prime != d_prime:
                raise DimensionError("All selectors in a family must share d and d'")
        if len(set(selectors)) != len(selectors):
            raise ValueError("Selector family contains duplicate selectors")

        index_matrix = np.array([s.indices for s in selectors], dtype=np.int64)
        index_matrix.flags.writeable = False
        object.__setattr__(self, 'selectors', selectors)
        object.__setattr__(self, 'index_matrix', index_matrix)

    @classmethod
    def from_indices(cls, index_lists: Iterable[Iterable[int]], d: int) -> 'SelectorFamily':
        return cls(tuple(Selector(tuple(indices), d) for indices in index_lists))

    @property
    def d(self) -> int:
        return self.selectors[0].d

    @property
    def d_prime(self) -> int:
        return self.selectors[0].d_prime

    def __len__(self) -> int:
        return len(self.selectors)

    def __iter__(self):
        return iter(self.selectors)


def _check_dimension(sel_d: int, x: Sequence):
    if sel_d != x.d:
        raise DimensionError(f"Selector expects d={sel_d}, sequence has d={x.d}")


def apply_selector(sel: Selector, x: SequenceLike) -> Sequence:
    """Subsequence L x."""
    x = as_sequence(x)
    _check_dimension(sel.d, x)
    return Sequence(x.values[list(sel.indices)])


def project(sel: Selector, x: SequenceLike) -> Sequence:
    """Projection L^T L x: x on the selected indices, zero elsewhere."""
    x = as_sequence(x)
    _check_dimension(sel.d, x)
    out = np.zeros(x.d)
    idx = list(sel.indices)
    out[idx] = x.values[idx]
    return Sequence(out)


def coverage(fam: SelectorFamily) -> np.ndarray:
    """Per-index count of selectors containing that index."""
    return np.bincount(fam.index_matrix.reshape(-1), minlength=fam.d).astype(np.int64)


def validate_family(fam: SelectorFamily) -> bool:
    """True iff every index is covered at least once (d and d' are shared by construction)."""
    try:
        return bool(coverage(fam).min() >= 1)
    except (AttributeError, IndexError):
        return False


def projections_of(fam: SelectorFamily, x: SequenceLike) -> List[Sequence]:
    """Projections of x under every selector, in family order."""
    x = as_sequence(x)
    return [project(sel, x) for sel in fam.selectors]


def reconstruct(fam: SelectorFamily, projections: Seq[SequenceLike]) -> Sequence:
    """Sum of projections divided elementwise by the coverage vector."""
    if len(projections) != len(fam):
        raise DimensionError(
            f"Expected {len(fam)} projections, got {len(projections)}"
        )
    counts = coverage(fam)
    if counts.min() < 1:
        uncovered = np.flatnonzero(counts == 0).tolist()
        raise CoverageError(f"Indices {uncovered[:10]} are not covered by the family")

    total = np.zeros(fam.d)
    for projection in projections:
        projection = as_sequence(projection)
        _check_dimension(fam.d, projection)
        total += projection.values
    return Sequence(total / counts)


def expected_projection_distance(fam: SelectorFamily, a: SequenceLike, b: SequenceLike) -> float:
    """
    Mean over selectors of ||L^T L a - L^T L b||_1.

    Zeros outside the selector cancel, so this equals the mean L1 distance of
    the subsequences themselves.
    """
    a = as_sequence(a)
    b = as_sequence(b)
    _check_dimension(fam.d, a)
    _check_dimension(fam.d, b)
    diff = np.abs(a.values - b.values)
    return float(diff[fam.index_matrix].sum(axis=1).mean())


def family_to_text(fam: SelectorFamily) -> str:
    """One selector per line, space-separated indices, after a '# d=.. d_prime=..' header."""
    lines = [f"# d={fam.d} d_prime={fam.d_prime}"]
    lines.extend(" ".join(str(i) for i in sel.indices) for sel in fam.selectors)
    return "\n".join(lines) + "\n"


def family_from_text(text: str) -> SelectorFamily:
    """Parse the output of family_to_text; without a header, d is max index + 1."""
    d = None
    index_lists = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith('#'):
            for token in line[1:].split():
                key, _, value = token.partition('=')
                if key == 'd':
                    d = int(value)
            continue
        index_lists.append([int(tok) for tok in line.split()])

    if not index_lists:
        raise ValueError("No selectors found in text")
    if d is None:
        d = max(max(indices) for indices in index_lists) + 1
    return SelectorFamily.from_indices(index_lists, d)
