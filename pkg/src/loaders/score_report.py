"""
Fold-level scores of an experiment run and their aggregates.

Scores are kept in long form, one row per (task, ratio, kind, fold, metric),
which is also the layout of scores.csv.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

import numpy as np
import pandas as pd

from ..classifiers.metrics import METRIC_NAMES, ConfusionMatrix, Metrics

KINDS = ('original', 'reduced', 'synthetic')
SCORE_COLUMNS = ['task', 'ratio', 'kind', 'fold', 'metric', 'value']
CONFUSION_COLUMNS = ['task', 'ratio', 'kind', 'fold', 'truth', 'predicted', 'count']


def cell_id(task: int, ratio: float) -> str:
    """Experiment cell label such as C04P05 (4 classes, 5 percent)."""
    return f"C{int(task):02d}P{int(round(ratio * 100)):02d}"


@dataclass
class ScoreReport:
    """Per-fold metrics and confusion counts for every experiment cell."""

    folds: int
    partial: bool = False
    scores: List[Dict[str, Any]] = field(default_factory=list)
    confusions: List[Dict[str, Any]] = field(default_factory=list)

    def add_fold(self, task: int, ratio: float, kind: str, fold: int,
                 metrics: Metrics, confusion: ConfusionMatrix):
        if kind not in KINDS:
            raise ValueError(f"Unknown dataset kind {kind!r}")
        for metric in METRIC_NAMES:
            self.scores.append({
                'task': int(task), 'ratio': float(ratio), 'kind': kind, 'fold': int(fold),
                'metric': metric, 'value': float(getattr(metrics, metric)),
            })
        for truth, row in enumerate(confusion.counts):
            for predicted, count in enumerate(row):
                self.confusions.append({
                    'task': int(task), 'ratio': float(ratio), 'kind': kind, 'fold': int(fold),
                    'truth': truth, 'predicted': predicted, 'count': int(count),
                })

    @property
    def is_empty(self) -> bool:
        return not self.scores

    def scores_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.scores, columns=SCORE_COLUMNS)
        return frame.sort_values(['task', 'ratio', 'kind', 'fold', 'metric'], kind='stable').reset_index(drop=True)

    def confusion_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.confusions, columns=CONFUSION_COLUMNS)
        return frame.sort_values(['task', 'ratio', 'kind', 'fold', 'truth', 'predicted'],
                                 kind='stable').reset_index(drop=True)

    def aggregate(self) -> pd.DataFrame:
        """Mean and population standard deviation over folds per (task, ratio, kind, metric)."""
        frame = self.scores_frame()
        if frame.empty:
            return pd.DataFrame(columns=['task', 'ratio', 'kind', 'metric', 'mean', 'std', 'folds'])
        grouped = frame.groupby(['task', 'ratio', 'kind', 'metric'], sort=True)['value']
        summary = grouped.agg(mean='mean', std=lambda v: float(np.std(v, ddof=0)), folds='count')
        return summary.reset_index()

    def mean_confusions(self) -> Dict[Tuple[int, float, str], np.ndarray]:
        """Row-normalised confusion matrices averaged over folds."""
        frame = self.confusion_frame()
        result = {}
        for (task, ratio, kind), group in frame.groupby(['task', 'ratio', 'kind'], sort=True):
            size = int(group['truth'].max()) + 1
            normalized = []
            for _, fold_rows in group.groupby('fold', sort=True):
                counts = np.zeros((size, size), dtype=np.int64)
                counts[fold_rows['truth'].to_numpy(), fold_rows['predicted'].to_numpy()] = fold_rows['count'].to_numpy()
                normalized.append(ConfusionMatrix(counts).normalized)
            result[(int(task), float(ratio), str(kind))] = np.mean(normalized, axis=0)
        return result

    @classmethod
    def from_files(cls, scores_path: Union[str, Path], confusions_path: Union[str, Path, None] = None,
                   folds: int = 0) -> 'ScoreReport':
        """Rebuild a report from scores.csv (and confusions.csv when present)."""
        scores = pd.read_csv(scores_path)
        missing = set(SCORE_COLUMNS) - set(scores.columns)
        if missing:
            raise ValueError(f"{scores_path} lacks columns {sorted(missing)}")
        partial = bool(scores['partial'].any()) if 'partial' in scores.columns and not scores.empty else False
        if not folds:
            folds = int(scores['fold'].nunique()) if not scores.empty else 0
        report = cls(folds=folds, partial=partial,
                     scores=scores[SCORE_COLUMNS].to_dict('records'))
        if confusions_path is not None and Path(confusions_path).is_file():
            report.confusions = pd.read_csv(confusions_path)[CONFUSION_COLUMNS].to_dict('records')
        return report
