from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..utils.errors import DimensionError
from .base_loader import BaseLoader

PGM_MAXVAL = 65535


def grid_to_pgm_bytes(grid: np.ndarray) -> bytes:
    """16-bit binary PGM of a grid, min-max scaled; a constant grid maps to 0."""
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 2:
        raise DimensionError(f"Expected a 2-D grid, got shape {grid.shape}")
    low, high = grid.min(), grid.max()
    scaled = np.zeros(grid.shape) if high == low else (grid - low) / (high - low)
    pixels = np.rint(scaled * PGM_MAXVAL).astype('>u2')
    header = f"P5\n{grid.shape[1]} {grid.shape[0]}\n{PGM_MAXVAL}\n".encode('ascii')
    return header + pixels.tobytes()


class GridLoader(BaseLoader):
    """
    Writes grids as flat CSV rows (row-major values, then the class token if
    given) and optional 16-bit PGM previews.

    Expected config format:
    {
        "dir": "results/augment",
        "filename": "generated.csv",
        "pgm_previews": 0          # number of grids to preview, 0 for none
    }
    """

    def __init__(self, config: Dict[str, Any] = None):
        super().__init__(config)
        self.filename = self.config.get('filename', 'generated.csv')
        self.pgm_previews = int(self.config.get('pgm_previews', 0))

    def load(self, grids: Sequence[np.ndarray], labels: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        grids = [np.asarray(g, dtype=np.float64) for g in grids]
        if labels is not None and len(labels) != len(grids):
            raise DimensionError(f"{len(labels)} labels for {len(grids)} grids")

        files: List[Path] = []
        path = self.out_dir / self.filename
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            for i, grid in enumerate(grids):
                fields = [repr(float(v)) for v in grid.reshape(-1)]
                if labels is not None:
                    fields.append(str(labels[i]))
                f.write(','.join(fields) + '\n')
        files.append(path)

        for i, grid in enumerate(grids[:self.pgm_previews]):
            pgm_path = self.out_dir / f"{Path(self.filename).stem}_{i:04d}.pgm"
            pgm_path.write_bytes(grid_to_pgm_bytes(grid))
            files.append(pgm_path)

        self.logger.info(f"Wrote {len(grids)} grids to {path}")
        return self._create_load_result(True, files)

    def get_loader_info(self) -> Dict[str, str]:
        return {
            "loader_type": "GridLoader",
            "description": "Grid CSV rows and 16-bit PGM previews",
            "target_destination": str(self.config.get('dir', 'results')),
        }
