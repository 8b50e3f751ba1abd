"""
Classification metrics in one-vs-rest form with support-weighted averages.

Confusion counts come from sklearn with rows = ground truth and columns =
prediction. Per-class precision, recall and F1 are 0 whenever their
denominator is 0.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from sklearn.metrics import confusion_matrix

from ..utils.errors import DimensionError, EmptyDatasetError, UnknownClassError

METRIC_NAMES = ('accuracy', 'precision', 'recall', 'f1')


def _safe_divide(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    numerator = np.asarray(numerator, dtype=np.float64)
    denominator = np.asarray(denominator, dtype=np.float64)
    out = np.zeros_like(numerator)
    np.divide(numerator, denominator, out=out, where=denominator != 0)
    return out


@dataclass(frozen=True)
class ConfusionMatrix:
    """C x C counts, rows = ground-truth class, columns = predicted class."""

    counts: np.ndarray

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise DimensionError(f"Confusion counts must be square, got shape {counts.shape}")
        counts.setflags(write=False)
        object.__setattr__(self, 'counts', counts)

    @property
    def num_classes(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def normalized(self) -> np.ndarray:
        """Each row divided by its sum; rows with no support stay all-zero."""
        return _safe_divide(self.counts, self.counts.sum(axis=1, keepdims=True))

    @property
    def true_positives(self) -> np.ndarray:
        return np.diag(self.counts).astype(np.int64)

    @property
    def false_positives(self) -> np.ndarray:
        return self.counts.sum(axis=0) - self.true_positives

    @property
    def false_negatives(self) -> np.ndarray:
        return self.counts.sum(axis=1) - self.true_positives

    @property
    def true_negatives(self) -> np.ndarray:
        return self.total - self.true_positives - self.false_positives - self.false_negatives


@dataclass(frozen=True)
class Metrics:
    """Support-weighted metrics plus their per-class values."""

    accuracy: float
    precision: float
    recall: float
    f1: float
    per_class_accuracy: np.ndarray
    per_class_ovr_accuracy: np.ndarray
    per_class_precision: np.ndarray
    per_class_recall: np.ndarray
    per_class_f1: np.ndarray
    support: np.ndarray

    def to_dict(self) -> Dict[str, Any]:
        return {
            'accuracy': self.accuracy,
            'precision': self.precision,
            'recall': self.recall,
            'f1': self.f1,
            'per_class_accuracy': self.per_class_accuracy.tolist(),
            'per_class_ovr_accuracy': self.per_class_ovr_accuracy.tolist(),
            'per_class_precision': self.per_class_precision.tolist(),
            'per_class_recall': self.per_class_recall.tolist(),
            'per_class_f1': self.per_class_f1.tolist(),
            'support': self.support.tolist(),
        }


def _as_class_indices(values: Sequence, num_classes: Optional[int]) -> np.ndarray:
    array = np.asarray(values)
    if array.ndim == 2:
        if num_classes is not None and array.shape[1] != num_classes:
            raise DimensionError(f"One-hot width {array.shape[1]} does not match {num_classes} classes")
        return np.argmax(array, axis=1)
    return array.astype(np.int64).reshape(-1)


def compute_metrics(truth: Sequence, predicted: Sequence,
                    num_classes: Optional[int] = None) -> Tuple[Metrics, ConfusionMatrix]:
    """
    Per-class one-vs-rest counts, metrics and support-weighted averages.

    Args:
        truth: Class indices or one-hot rows
        predicted: Class indices or one-hot rows
        num_classes: Number of classes; inferred from one-hot width or max index

    Returns:
        (Metrics, ConfusionMatrix)
    """
    y_true = _as_class_indices(truth, num_classes)
    y_pred = _as_class_indices(predicted, num_classes)
    if y_true.shape != y_pred.shape:
        raise DimensionError(f"{y_true.size} ground-truth labels but {y_pred.size} predictions")
    if y_true.size == 0:
        raise EmptyDatasetError("Cannot compute metrics on zero samples")

    if num_classes is None:
        one_hot_width = np.asarray(truth).shape[1] if np.asarray(truth).ndim == 2 else 0
        num_classes = max(one_hot_width, int(max(y_true.max(), y_pred.max())) + 1)
    for name, values in (('ground-truth', y_true), ('predicted', y_pred)):
        if values.min() < 0 or values.max() >= num_classes:
            raise UnknownClassError(f"{name} label outside 0..{num_classes - 1}")

    cm = ConfusionMatrix(confusion_matrix(y_true, y_pred, labels=np.arange(num_classes)))
    tp, fp, fn, tn = cm.true_positives, cm.false_positives, cm.false_negatives, cm.true_negatives
    support = tp + fn
    n = cm.total

    precision = _safe_divide(tp, tp + fp)
    recall = _safe_divide(tp, tp + fn)
    f1 = _safe_divide(2 * precision * recall, precision + recall)
    weights = support / n

    metrics = Metrics(
        accuracy=float(np.trace(cm.counts) / n),
        precision=float(weights @ precision),
        recall=float(weights @ recall),
        f1=float(weights @ f1),
        per_class_accuracy=recall,
        per_class_ovr_accuracy=(tp + tn) / n,
        per_class_precision=precision,
        per_class_recall=recall,
        per_class_f1=f1,
        support=support,
    )
    return metrics, cm
