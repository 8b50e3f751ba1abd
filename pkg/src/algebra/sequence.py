from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from ..utils.errors import DimensionError


@dataclass(frozen=True, eq=False)
class Sequence:
    """
    A length-d real vector.

    The values array is copied and made read-only on construction so a
    Sequence can be shared between workers without synchronisation.
    """

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        if values.size < 1:
            raise DimensionError("Sequence must have at least one value")
        if not np.all(np.isfinite(values)):
            raise ValueError("Sequence values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, 'values', values)

    @property
    def d(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.d

    def __getitem__(self, index):
        return self.values[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Sequence):
            return NotImplemented
        return self.d == other.d and bool(np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash(self.values.tobytes())

    def to_list(self) -> list:
        return self.values.tolist()


SequenceLike = Union[Sequence, np.ndarray, Iterable[float]]


def as_sequence(x: SequenceLike) -> Sequence:
    """Wrap array-likes into a Sequence; Sequences pass through."""
    if isinstance(x, Sequence):
        return x
    return Sequence(np.asarray(x, dtype=np.float64))


@dataclass(frozen=True)
class GridShape:
    """Side length n of a square grid and side length n' of its square patches."""

    n: int
    n_prime: int

    def __post_init__(self):
        if self.n < 1 or self.n_prime < 1:
            raise DimensionError(f"Grid sides must be positive, got n={self.n}, n'={self.n_prime}")
        if self.n_prime > self.n:
            raise DimensionError(f"Patch side {self.n_prime} exceeds grid side {self.n}")

    @property
    def d(self) -> int:
        return self.n * self.n

    @property
    def patch_count(self) -> int:
        return (self.n - self.n_prime + 1) ** 2

    def check_sequence(self, x: Sequence):
        if x.d != self.d:
            raise DimensionError(f"Grid shape {self.n}x{self.n} needs d={self.d}, got d={x.d}")


def grid_to_sequence(grid: np.ndarray) -> Sequence:
    """Row-major vectorisation of a square grid."""
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 2 or grid.shape[0] != grid.shape[1]:
        raise DimensionError(f"Expected a square grid, got shape {grid.shape}")
    return Sequence(grid.reshape(-1))


def sequence_to_grid(x: SequenceLike) -> np.ndarray:
    """Inverse of grid_to_sequence; d must be a perfect square."""
    x = as_sequence(x)
    n = int(round(np.sqrt(x.d)))
    if n * n != x.d:
        raise DimensionError(f"Sequence of length {x.d} is not a square grid")
    return np.array(x.values).reshape(n, n)
