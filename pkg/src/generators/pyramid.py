import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.ndimage import map_coordinates

from ..utils.errors import ConfigurationError, DimensionError


def resize_grid(grid: np.ndarray, side: int) -> np.ndarray:
    """
    Bilinear, edge-clamped resampling of a square grid to side x side.

    Corner pixels map onto corner pixels, so resizing to the same side returns
    the input values exactly.
    """
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 2 or grid.shape[0] != grid.shape[1]:
        raise DimensionError(f"Expected a square grid, got shape {grid.shape}")
    if side < 1:
        raise DimensionError(f"Target side must be positive, got {side}")
    if side == grid.shape[0]:
        return grid.copy()

    coords = np.linspace(0.0, grid.shape[0] - 1.0, side)
    rows, cols = np.meshgrid(coords, coords, indexing='ij')
    return map_coordinates(grid, [rows, cols], order=1, mode='nearest')


def pyramid_sides(finest_side: int, coarsest_side: int, scale_rate: float) -> List[int]:
    """
    Sides round(finest * rate^k) for k = 0, 1, ..., clipped at the coarsest
    side and deduplicated, from finest to coarsest.
    """
    if coarsest_side > finest_side:
        raise ConfigurationError(f"coarsest_side {coarsest_side} exceeds finest_side {finest_side}")
    if not 0.0 < scale_rate < 1.0:
        raise ConfigurationError(f"scale_rate must lie in (0, 1), got {scale_rate}")

    sides = [finest_side]
    k = 1
    while sides[-1] > coarsest_side:
        side = max(int(math.floor(finest_side * scale_rate ** k + 0.5)), coarsest_side)
        if side < sides[-1]:
            sides.append(side)
        k += 1
    return sides


@dataclass(frozen=True)
class ScalePyramid:
    """Sides from finest to coarsest and the target resampled at each side."""

    sides: Tuple[int, ...]
    targets: Tuple[np.ndarray, ...]

    def __len__(self) -> int:
        return len(self.sides)
