import warnings
from typing import Any, Dict, List, Tuple

import numpy as np
from sklearn.model_selection import StratifiedKFold

from ..classifiers.dataset import LabeledDataset
from ..utils.errors import ConfigurationError
from ..utils.seeding import derive_seed
from .base_transformer import BaseTransformer

SPLIT_STREAM = 31
POOLED_LABEL = -1


def make_split(classes: np.ndarray, folds: int, seed: int = 0) -> np.ndarray:
    """
    Stratified random fold assignment.

    Folds come from sklearn's shuffled StratifiedKFold, so fold sizes differ
    by at most one and every class is spread as evenly as its support allows.
    Classes with fewer members than folds are pooled under one shared label
    before splitting; folds equal to the row count gives leave-one-out.

    Args:
        classes: Class index per row
        folds: Number of folds (2 <= folds <= N)
        seed: Base seed

    Returns:
        Fold index per row
    """
    classes = np.asarray(classes, dtype=np.int64)
    n = classes.size
    if folds < 2 or folds > n:
        raise ConfigurationError(f"folds must lie in [2, {n}], got {folds}")

    labels, counts = np.unique(classes, return_counts=True)
    strata = np.where(np.isin(classes, labels[counts < folds]), POOLED_LABEL, classes)

    kfold = StratifiedKFold(n_splits=folds, shuffle=True, random_state=derive_seed(seed, SPLIT_STREAM))
    assignment = np.empty(n, dtype=np.int64)
    with warnings.catch_warnings():
        # a pooled stratum smaller than the fold count is expected here
        warnings.simplefilter('ignore', UserWarning)
        for fold, (_, test) in enumerate(kfold.split(np.zeros((n, 1)), strata)):
            assignment[test] = fold
    return assignment


class FoldSplitter(BaseTransformer):
    """
    Stratified k-fold cross-validation splits.

    Expected config format:
    {
        "folds": 5,
        "seed": 0
    }
    """

    def __init__(self, config: Dict[str, Any] = None):
        super().__init__(config)
        self.folds = int(self.config.get('folds', 5))
        self.seed = int(self.config.get('seed', 0))

    def assign(self, dataset: LabeledDataset) -> np.ndarray:
        self._require_dataset(dataset)
        supports = dataset.supports
        small = [int(c) for c in np.flatnonzero((supports > 0) & (supports < self.folds))]
        if small:
            self.logger.warning(
                f"Classes {small} have fewer than {self.folds} samples; "
                f"they are pooled into one stratum"
            )
        return make_split(dataset.classes, self.folds, self.seed)

    def split(self, dataset: LabeledDataset) -> List[Tuple[LabeledDataset, LabeledDataset]]:
        """(train, test) pairs; fold k is the test set of pair k."""
        assignment = self.assign(dataset)
        pairs = []
        for fold in range(self.folds):
            test = np.flatnonzero(assignment == fold)
            train = np.flatnonzero(assignment != fold)
            pairs.append((dataset.subset(train), dataset.subset(test)))
        self.stats = {"folds": self.folds, "test_sizes": [t.num_samples for _, t in pairs]}
        return pairs

    def transform(self, dataset: LabeledDataset, fold: int = 0) -> LabeledDataset:
        """Training partition of the given fold."""
        if not 0 <= fold < self.folds:
            raise ConfigurationError(f"fold must lie in [0, {self.folds}), got {fold}")
        assignment = self.assign(dataset)
        return dataset.subset(np.flatnonzero(assignment != fold))

    def get_transformer_info(self) -> Dict[str, str]:
        return {
            "transformer_type": "FoldSplitter",
            "description": "Stratified random k-fold partition (sklearn StratifiedKFold)",
            "supported_operations": "assign, split, transform (training partition)",
            "folds": str(self.folds),
        }
