import json
from pathlib import Path
from typing import Any, Dict, List

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ..classifiers.metrics import METRIC_NAMES  # noqa: E402
from .base_loader import BaseLoader  # noqa: E402
from .score_report import KINDS, ScoreReport, cell_id  # noqa: E402

KIND_COLORS = {'original': '#4c72b0', 'reduced': '#dd8452', 'synthetic': '#55a868'}
FLOAT_FORMAT = '%.12g'


class ReportLoader(BaseLoader):
    """
    Writes a ScoreReport to an output directory.

    Expected config format:
    {
        "dir": "results",
        "save_svg": True
    }

    Files: scores.csv (long form, one row per task/ratio/kind/fold/metric),
    confusions.csv (raw per-fold counts), summary.json (fold means and
    standard deviations), confusion_<cell>.csv (row-normalised, averaged over
    folds) and <metric>.svg bar charts.
    """

    def __init__(self, config: Dict[str, Any] = None):
        super().__init__(config)
        self.save_svg = self.config.get('save_svg', True)

    def load(self, report: ScoreReport) -> Dict[str, Any]:
        if not isinstance(report, ScoreReport):
            raise TypeError(f"ReportLoader expects a ScoreReport, got {type(report).__name__}")

        files: List[Path] = []
        files.append(self._write_scores(report))
        files.append(self._write_confusion_counts(report))
        files.append(self._write_summary(report))
        files.extend(self._write_confusions(report))
        if self.save_svg and not report.is_empty:
            files.extend(self._write_charts(report))

        self.logger.info(f"Wrote {len(files)} report files to {self.out_dir}"
                         + (" (partial run)" if report.partial else ""))
        return self._create_load_result(True, files)

    def _write_scores(self, report: ScoreReport) -> Path:
        frame = report.scores_frame()
        frame['partial'] = report.partial
        path = self.out_dir / 'scores.csv'
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
        return path

    def _write_confusion_counts(self, report: ScoreReport) -> Path:
        path = self.out_dir / 'confusions.csv'
        report.confusion_frame().to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
        return path

    def _write_summary(self, report: ScoreReport) -> Path:
        summary = report.aggregate()
        cells: Dict[str, Dict[str, Any]] = {}
        for row in summary.itertuples(index=False):
            cell = cells.setdefault(cell_id(row.task, row.ratio), {
                'task': int(row.task), 'ratio': float(row.ratio),
            })
            cell.setdefault(row.kind, {})[row.metric] = {
                'mean': float(row.mean), 'std': float(row.std), 'folds': int(row.folds),
            }
        document = {'partial': report.partial, 'folds': report.folds, 'cells': cells}
        path = self.out_dir / 'summary.json'
        path.write_text(json.dumps(document, indent=2, sort_keys=True) + '\n', encoding='utf-8')
        return path

    def _write_confusions(self, report: ScoreReport) -> List[Path]:
        by_cell: Dict[str, List[str]] = {}
        for (task, ratio, kind), matrix in report.mean_confusions().items():
            lines = by_cell.setdefault(cell_id(task, ratio), [])
            if not lines:
                lines.append(','.join(['kind', 'truth'] + [f"pred_{j}" for j in range(matrix.shape[1])]))
            for truth, row in enumerate(matrix):
                lines.append(','.join([kind, str(truth)] + [FLOAT_FORMAT % v for v in row]))

        paths = []
        for cell, lines in sorted(by_cell.items()):
            path = self.out_dir / f"confusion_{cell}.csv"
            path.write_text('\n'.join(lines) + '\n', encoding='utf-8')
            paths.append(path)
        return paths

    def _write_charts(self, report: ScoreReport) -> List[Path]:
        summary = report.aggregate()
        summary['cell'] = [cell_id(t, r) for t, r in zip(summary['task'], summary['ratio'])]
        cells = sorted(summary['cell'].unique())

        # ids inside the SVG are hashed from this salt
        plt.rcParams['svg.hashsalt'] = 'report'
        paths = []
        width = 0.8 / len(KINDS)
        x = np.arange(len(cells))
        for metric in METRIC_NAMES:
            rows = summary[summary['metric'] == metric].set_index(['cell', 'kind'])
            fig, ax = plt.subplots(figsize=(max(6.0, 1.2 * len(cells)), 4.0))
            for offset, kind in enumerate(KINDS):
                means = [rows['mean'].get((c, kind), np.nan) for c in cells]
                stds = [rows['std'].get((c, kind), np.nan) for c in cells]
                ax.bar(x + (offset - 1) * width, means, width, yerr=stds, capsize=3,
                       label=kind, color=KIND_COLORS[kind])
            ax.set_xticks(x)
            ax.set_xticklabels(cells)
            ax.set_ylim(0.0, 1.0)
            ax.set_ylabel(metric)
            ax.set_title(f"{metric} (mean and std over folds)")
            ax.legend(loc='lower right')
            fig.tight_layout()

            path = self.out_dir / f"{metric}.svg"
            fig.savefig(path, format='svg', metadata={'Date': None})
            plt.close(fig)
            paths.append(path)
        return paths

    def get_loader_info(self) -> Dict[str, str]:
        return {
            "loader_type": "ReportLoader",
            "description": "Score tables, summary, confusion matrices and bar charts",
            "target_destination": str(self.config.get('dir', 'results')),
        }
