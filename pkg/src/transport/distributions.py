from dataclasses import dataclass
from typing import Union

import numpy as np

from ..utils.errors import DimensionError
from ..utils.seeding import make_rng


@dataclass(frozen=True, eq=False)
class EmpiricalDistribution:
    """
    m equally weighted points in R^k, stored as a read-only (m, k) array.

    One-dimensional input is read as m points in R^1.
    """

    points: np.ndarray

    def __post_init__(self):
        points = np.array(self.points, dtype=np.float64)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        if points.ndim != 2 or points.shape[0] < 1 or points.shape[1] < 1:
            raise DimensionError(f"Expected a non-empty (m, k) point array, got shape {points.shape}")
        if not np.all(np.isfinite(points)):
            raise ValueError("Distribution points must be finite")
        points.flags.writeable = False
        object.__setattr__(self, 'points', points)

    @property
    def m(self) -> int:
        return int(self.points.shape[0])

    @property
    def k(self) -> int:
        return int(self.points.shape[1])


DistributionLike = Union[EmpiricalDistribution, np.ndarray, list]


def as_distribution(points: DistributionLike) -> EmpiricalDistribution:
    if isinstance(points, EmpiricalDistribution):
        return points
    return EmpiricalDistribution(np.asarray(points, dtype=np.float64))


@dataclass(frozen=True, eq=False)
class ProjectionSet:
    """p unit directions in R^k drawn from the stream keyed by (seed, stream)."""

    directions: np.ndarray
    seed: int = 0
    stream: int = 0

    def __post_init__(self):
        directions = np.array(self.directions, dtype=np.float64)
        if directions.ndim == 1:
            directions = directions.reshape(1, -1)
        if directions.ndim != 2 or directions.shape[0] < 1:
            raise DimensionError(f"Expected a (p, k) direction array, got shape {directions.shape}")
        norms = np.linalg.norm(directions, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-9):
            raise ValueError("Projection directions must have unit L2 norm")
        directions.flags.writeable = False
        object.__setattr__(self, 'directions', directions)

    @classmethod
    def sample(cls, dimension: int, count: int, seed: int, stream: int = 0) -> 'ProjectionSet':
        """Uniform directions on the unit sphere via normalised Gaussian draws."""
        if dimension < 1 or count < 1:
            raise DimensionError(f"Need positive dimension and count, got {dimension}, {count}")
        rng = make_rng(seed, stream)
        draws = rng.standard_normal((count, dimension))
        draws /= np.linalg.norm(draws, axis=1, keepdims=True)
        return cls(draws, seed=seed, stream=stream)

    @property
    def p(self) -> int:
        return int(self.directions.shape[0])

    @property
    def k(self) -> int:
        return int(self.directions.shape[1])
