import math
from typing import Any, Dict, Optional

import numpy as np

from ..classifiers.dataset import LabeledDataset
from ..generators.base_generator import BaseGenerator
from ..generators.gpdm_generator import GPDMGenerator
from ..utils.errors import DimensionError
from ..utils.seeding import make_rng
from .base_transformer import BaseTransformer

ALLOCATION_STREAM = 21


def allocate_counts(num_samples: int, target_size: int, seed: int = 0) -> np.ndarray:
    """
    Per-sample generation counts summing to target_size exactly.

    Every sample gets floor(target / n); the first (target mod n) samples of a
    seeded permutation get one more.
    """
    if num_samples < 1:
        raise ValueError("Cannot allocate synthetic samples without source samples")
    if target_size < 0:
        raise ValueError(f"target_size must be non-negative, got {target_size}")
    base, remainder = divmod(target_size, num_samples)
    counts = np.full(num_samples, base, dtype=np.int64)
    order = make_rng(seed, ALLOCATION_STREAM).permutation(num_samples)
    counts[order[:remainder]] += 1
    return counts


class Synthesizer(BaseTransformer):
    """
    Builds a synthetic training set of a fixed size from a reduced one.

    Each reduced sample is reshaped to a square grid, handed to a one-shot
    generator allocate_counts times, and every output inherits the label and
    source row id of its sample.

    Expected config format:
    {
        "target_size": 908,
        "seed": 0,                # allocation seed
        "jobs": 1,
        "generator": {...}        # GPDMGenerator config
    }
    """

    def __init__(self, config: Dict[str, Any] = None, generator: Optional[BaseGenerator] = None):
        super().__init__(config)
        self.generator = generator or GPDMGenerator(self.config.get('generator', {}))
        self.target_size = self.config.get('target_size')
        self.seed = int(self.config.get('seed', 0))
        self.jobs = int(self.config.get('jobs', 1))

    def transform(self, dataset: LabeledDataset, target_size: Optional[int] = None,
                  jobs: Optional[int] = None) -> LabeledDataset:
        self._require_dataset(dataset)
        target_size = target_size if target_size is not None else self.target_size
        if target_size is None:
            raise ValueError("target_size is required")

        side = math.isqrt(dataset.num_features)
        if side * side != dataset.num_features:
            raise DimensionError(f"{dataset.num_features} features do not form a square grid")

        counts = allocate_counts(dataset.num_samples, int(target_size), self.seed)
        grids = [row.reshape(side, side) for row in dataset.features]
        outputs = self.generator.augment_dataset(grids, counts.tolist(),
                                                 jobs=self.jobs if jobs is None else jobs)

        sources = np.repeat(np.arange(dataset.num_samples), counts)
        features = np.stack([grid.reshape(-1) for grid in outputs]) if outputs else np.zeros((0, dataset.num_features))
        synthetic = LabeledDataset(features, dataset.labels[sources], dataset.row_ids[sources],
                                   dataset.class_names)

        self.stats = {
            "source_size": dataset.num_samples,
            "output_size": synthetic.num_samples,
            "min_per_sample": int(counts.min()),
            "max_per_sample": int(counts.max()),
        }
        self.logger.info(f"Synthesized {synthetic.num_samples} samples from {dataset.num_samples}")
        return synthetic

    def get_transformer_info(self) -> Dict[str, str]:
        return {
            "transformer_type": "Synthesizer",
            "description": "One-shot generation of a fixed-size synthetic training set",
            "supported_operations": "round-robin count allocation, per-sample generation",
            "generator": self.generator.__class__.__name__,
        }
