"""
Patch extraction (im2col with stride 1) and its adjoint scatter-add (col2im).

Patches are ordered by top-left corner, row-major, and each patch is
flattened row-major, so patch j equals apply_selector of the j-th selector of
enumerate_2d_patches on the vectorised grid.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..transport.distributions import EmpiricalDistribution
from ..utils.errors import DimensionError


def _check_grid(grid: np.ndarray, patch_side: int) -> np.ndarray:
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 2 or grid.shape[0] != grid.shape[1]:
        raise DimensionError(f"Expected a square grid, got shape {grid.shape}")
    if patch_side < 1 or patch_side > grid.shape[0]:
        raise DimensionError(f"Patch side {patch_side} does not fit a {grid.shape[0]}x{grid.shape[0]} grid")
    return grid


def extract_patch_array(grid: np.ndarray, patch_side: int) -> np.ndarray:
    """All stride-1 patches as a ((side-patch_side+1)^2, patch_side^2) array."""
    grid = _check_grid(grid, patch_side)
    windows = sliding_window_view(grid, (patch_side, patch_side))
    return windows.reshape(-1, patch_side * patch_side).copy()


def extract_patches(grid: np.ndarray, patch_side: int) -> EmpiricalDistribution:
    """The empirical distribution of all stride-1 patches of a grid."""
    return EmpiricalDistribution(extract_patch_array(grid, patch_side))


def scatter_add_patches(patch_values: np.ndarray, side: int, patch_side: int) -> np.ndarray:
    """
    Adjoint of extract_patch_array: add every patch row back onto its pixel
    positions; overlapping contributions sum.
    """
    out_side = side - patch_side + 1
    patch_values = np.asarray(patch_values, dtype=np.float64)
    expected = (out_side * out_side, patch_side * patch_side)
    if patch_values.shape != expected:
        raise DimensionError(f"Expected patch array of shape {expected}, got {patch_values.shape}")

    cols = patch_values.reshape(out_side, out_side, patch_side, patch_side)
    grid = np.zeros((side, side))
    for dy in range(patch_side):
        for dx in range(patch_side):
            grid[dy:dy + out_side, dx:dx + out_side] += cols[:, :, dy, dx]
    return grid
