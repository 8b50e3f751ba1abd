from typing import Any, Dict, List

import numpy as np

from ..utils.seeding import make_rng
from .base_extractor import BaseExtractor


def band_pattern(side: int, class_index: int, phase: float) -> np.ndarray:
    """Sinusoidal bands whose orientation and frequency depend on the class."""
    frequency = 2 + class_index // 4
    angle = (class_index % 4) * np.pi / 4
    y, x = np.mgrid[0:side, 0:side].astype(np.float64)
    coordinate = np.cos(angle) * y + np.sin(angle) * x
    return np.sin(2 * np.pi * frequency * coordinate / side + phase)


class TextureExtractor(BaseExtractor):
    """
    Built-in texture task: C classes of band patterns on side x side grids,
    each sample with a random phase shift and additive Gaussian noise.

    Expected config format:
    {
        "num_classes": 4,
        "per_class": 60,
        "side": 16,
        "noise": 0.5,
        "seed": 7
    }
    """

    def __init__(self, config: Dict[str, Any] = None):
        super().__init__(config)
        self.num_classes = int(self.config.get('num_classes', 4))
        self.per_class = int(self.config.get('per_class', 60))
        self.side = int(self.config.get('side', 16))
        self.noise = float(self.config.get('noise', 0.5))
        self.seed = int(self.config.get('seed', 7))

    def connect(self) -> bool:
        if self.num_classes < 2 or self.per_class < 1 or self.side < 2:
            raise ValueError("Texture task needs >= 2 classes, >= 1 sample per class and side >= 2")
        self.connection = make_rng(self.seed)
        return True

    def extract(self) -> List[Dict[str, Any]]:
        """Records ordered class by class; the class token is the class index."""
        if self.connection is None:
            raise RuntimeError("Not connected. Call connect() first.")

        rng = self.connection
        records = []
        for class_index in range(self.num_classes):
            for _ in range(self.per_class):
                grid = band_pattern(self.side, class_index, rng.uniform(0, 2 * np.pi))
                grid = grid + self.noise * rng.standard_normal(grid.shape)
                records.append({
                    "line_number": len(records) + 1,
                    "fields": [*grid.reshape(-1).tolist(), str(class_index)],
                })

        self.logger.info(f"Generated {len(records)} texture samples "
                         f"({self.num_classes} classes, {self.side}x{self.side})")
        return records

    def disconnect(self) -> bool:
        self.connection = None
        return True

    def get_extractor_info(self) -> Dict[str, str]:
        return {
            "extractor_type": "TextureExtractor",
            "description": "Seeded band-pattern texture task for smoke runs",
            "num_classes": str(self.num_classes),
            "side": str(self.side),
        }
