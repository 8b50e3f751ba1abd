from typing import Any, Dict, Optional

import numpy as np
from sklearn.preprocessing import StandardScaler

from ..classifiers.dataset import LabeledDataset
from ..utils.errors import DimensionError
from .base_transformer import BaseTransformer


class FeatureStandardizer(BaseTransformer):
    """
    Per-feature z-score scaling fitted on one split and applied to any other.

    Wraps sklearn's StandardScaler; features with zero spread on the fitting
    split get unit scale and are only centred.
    """

    def __init__(self, config: Dict[str, Any] = None):
        super().__init__(config)
        self.scaler: Optional[StandardScaler] = None

    @property
    def mean(self) -> Optional[np.ndarray]:
        return None if self.scaler is None else self.scaler.mean_

    @property
    def scale(self) -> Optional[np.ndarray]:
        return None if self.scaler is None else self.scaler.scale_

    def fit(self, dataset: LabeledDataset) -> 'FeatureStandardizer':
        self._require_dataset(dataset)
        if dataset.num_samples == 0:
            raise DimensionError("Cannot fit a standardizer on an empty dataset")
        self.scaler = StandardScaler().fit(dataset.features)
        self.stats = {"fitted_on": dataset.num_samples,
                      "constant_features": int(np.sum(self.scaler.var_ == 0))}
        return self

    def transform(self, dataset: LabeledDataset, **kwargs) -> LabeledDataset:
        self._require_dataset(dataset)
        if self.scaler is None:
            raise RuntimeError("Standardizer is not fitted. Call fit() first.")
        if dataset.num_features != self.scaler.n_features_in_:
            raise DimensionError(f"Fitted on {self.scaler.n_features_in_} features, got {dataset.num_features}")
        return dataset.with_features(self.scaler.transform(dataset.features))

    def fit_transform(self, dataset: LabeledDataset) -> LabeledDataset:
        return self.fit(dataset).transform(dataset)

    def get_transformer_info(self) -> Dict[str, str]:
        return {
            "transformer_type": "FeatureStandardizer",
            "description": "Per-feature z-score fitted on the training split (sklearn StandardScaler)",
            "supported_operations": "fit, transform, fit_transform",
        }
