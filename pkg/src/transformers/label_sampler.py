import math
from typing import Any, Dict, Optional, Sequence

import numpy as np

from ..classifiers.dataset import LabeledDataset
from ..utils.errors import SamplingError
from ..utils.seeding import make_rng
from .base_transformer import BaseTransformer

SAMPLE_STREAM = 11
DOWNSAMPLE_STREAM = 12


def _draw(classes: np.ndarray, counts: Sequence[int], seed: int, stream: int) -> np.ndarray:
    chosen = []
    for class_index, count in enumerate(counts):
        members = np.flatnonzero(classes == class_index)
        if count > members.size:
            raise SamplingError(
                f"Class {class_index} has {members.size} samples, cannot draw {count}"
            )
        order = make_rng(seed, stream, class_index).permutation(members.size)
        chosen.append(members[order[:count]])
    # original row order is kept
    return np.sort(np.concatenate(chosen)) if chosen else np.zeros(0, dtype=np.int64)


def label_weighted_sample(data: LabeledDataset, ratio: Optional[float] = None,
                          counts: Optional[Sequence[int]] = None, seed: int = 0) -> LabeledDataset:
    """
    Sample each class without replacement.

    Args:
        data: Dataset to reduce
        ratio: Fraction per class; class c keeps ceil(ratio * support_c)
        counts: Explicit per-class sizes, overriding ratio
        seed: Base seed; class c draws from its own stream

    Returns:
        The reduced dataset, rows in their original order
    """
    supports = data.supports
    if counts is not None:
        counts = [int(c) for c in counts]
        if len(counts) != data.num_classes:
            raise SamplingError(f"Got {len(counts)} class counts for {data.num_classes} classes")
        for class_index, (count, support) in enumerate(zip(counts, supports)):
            if support > 0 and count < 1:
                raise SamplingError(f"Class {class_index} needs at least one sample, got {count}")
    elif ratio is not None:
        if not 0.0 < ratio <= 1.0:
            raise SamplingError(f"Ratio must lie in (0, 1], got {ratio}")
        counts = [math.ceil(ratio * int(s) - 1e-9) for s in supports]
    else:
        raise SamplingError("Either ratio or counts is required")

    return data.subset(_draw(data.classes, counts, seed, SAMPLE_STREAM))


def proportional_counts(supports: Sequence[int], total: int) -> np.ndarray:
    """Split total across classes proportionally to support (largest remainder)."""
    supports = np.asarray(supports, dtype=np.int64)
    if total > supports.sum():
        raise SamplingError(f"Cannot draw {total} rows from {int(supports.sum())}")
    exact = supports * total / supports.sum()
    counts = np.floor(exact).astype(np.int64)
    remainder = total - int(counts.sum())
    # ties go to the lower class index
    order = np.lexsort((np.arange(supports.size), -(exact - counts)))
    counts[order[:remainder]] += 1
    return counts


class LabelSampler(BaseTransformer):
    """
    Label-weighted random sampling.

    Expected config format:
    {
        "ratio": 0.05,           # ceil(ratio * support) per class
        "counts": [9, 16, 17, 4],  # optional, exact per-class sizes
        "seed": 0
    }
    """

    def __init__(self, config: Dict[str, Any] = None):
        super().__init__(config)
        self.ratio = self.config.get('ratio')
        self.counts = self.config.get('counts')
        self.seed = int(self.config.get('seed', 0))

    def transform(self, dataset: LabeledDataset, ratio: Optional[float] = None,
                  counts: Optional[Sequence[int]] = None, seed: Optional[int] = None) -> LabeledDataset:
        self._require_dataset(dataset)
        if ratio is None and counts is None:
            ratio, counts = self.ratio, self.counts
        reduced = label_weighted_sample(dataset, ratio=ratio, counts=counts,
                                        seed=self.seed if seed is None else seed)
        self.stats = {
            "input_size": dataset.num_samples,
            "output_size": reduced.num_samples,
            "supports": reduced.supports.tolist(),
        }
        self.logger.debug(f"Reduced {dataset.num_samples} -> {reduced.num_samples} "
                          f"(supports {self.stats['supports']})")
        return reduced

    def downsample(self, dataset: LabeledDataset, total: int, seed: Optional[int] = None) -> LabeledDataset:
        """Label-weighted sample of exactly total rows; identity when total >= N."""
        self._require_dataset(dataset)
        if total >= dataset.num_samples:
            return dataset
        counts = proportional_counts(dataset.supports, total)
        indices = _draw(dataset.classes, counts, self.seed if seed is None else seed, DOWNSAMPLE_STREAM)
        self.logger.info(f"Down-sampled {dataset.num_samples} -> {total} rows")
        return dataset.subset(indices)

    def get_transformer_info(self) -> Dict[str, str]:
        return {
            "transformer_type": "LabelSampler",
            "description": "Per-class random sampling without replacement",
            "supported_operations": "ratio (ceil per class), explicit counts, exact-total downsample",
        }
