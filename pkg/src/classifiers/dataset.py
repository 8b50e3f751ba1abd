from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..utils.errors import DataFormatError, DimensionError


@dataclass(frozen=True)
class LabeledDataset:
    """
    Feature rows with one-hot labels.

    row_ids identify the source rows (line order of the ingested file), so
    splits and reductions can be checked for overlap after any number of
    subset operations.
    """

    features: np.ndarray
    labels: np.ndarray
    row_ids: Optional[np.ndarray] = None
    class_names: List[str] = field(default_factory=list)

    def __post_init__(self):
        features = np.array(self.features, dtype=np.float64)
        labels = np.array(self.labels, dtype=np.float64)
        if features.ndim != 2 or labels.ndim != 2:
            raise DimensionError(
                f"Expected 2-D features and labels, got {features.shape} and {labels.shape}"
            )
        if features.shape[0] != labels.shape[0]:
            raise DimensionError(f"{features.shape[0]} feature rows but {labels.shape[0]} label rows")
        if not np.all(np.isfinite(features)):
            bad = int(np.argwhere(~np.isfinite(features))[0, 0])
            raise DataFormatError(f"Non-finite feature value in row {bad}")
        if labels.size and not (np.all((labels == 0) | (labels == 1)) and np.all(labels.sum(axis=1) == 1)):
            raise DataFormatError("Every label row must be one-hot")

        row_ids = np.arange(features.shape[0]) if self.row_ids is None else np.array(self.row_ids, dtype=np.int64)
        if row_ids.shape != (features.shape[0],):
            raise DimensionError(f"Expected {features.shape[0]} row ids, got {row_ids.shape}")

        for array in (features, labels, row_ids):
            array.setflags(write=False)
        object.__setattr__(self, 'features', features)
        object.__setattr__(self, 'labels', labels)
        object.__setattr__(self, 'row_ids', row_ids)
        object.__setattr__(self, 'class_names', list(self.class_names))

    @classmethod
    def from_indices(cls, features: np.ndarray, classes: Sequence[int], num_classes: int,
                     row_ids: Optional[np.ndarray] = None,
                     class_names: Optional[List[str]] = None) -> 'LabeledDataset':
        classes = np.asarray(classes, dtype=np.int64)
        labels = np.zeros((classes.size, num_classes))
        labels[np.arange(classes.size), classes] = 1.0
        features = np.asarray(features, dtype=np.float64).reshape(classes.size, -1)
        return cls(features, labels, row_ids, class_names or [])

    @property
    def num_samples(self) -> int:
        return self.features.shape[0]

    @property
    def num_features(self) -> int:
        return self.features.shape[1]

    @property
    def num_classes(self) -> int:
        return self.labels.shape[1]

    @property
    def classes(self) -> np.ndarray:
        return np.argmax(self.labels, axis=1) if self.num_samples else np.zeros(0, dtype=np.int64)

    @property
    def supports(self) -> np.ndarray:
        return np.bincount(self.classes, minlength=self.num_classes)

    def subset(self, indices: Sequence[int]) -> 'LabeledDataset':
        indices = np.asarray(indices, dtype=np.int64)
        return LabeledDataset(self.features[indices], self.labels[indices],
                              self.row_ids[indices], self.class_names)

    def with_features(self, features: np.ndarray) -> 'LabeledDataset':
        return LabeledDataset(features, self.labels, self.row_ids, self.class_names)

    def __len__(self) -> int:
        return self.num_samples
