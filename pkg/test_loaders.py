#!/usr/bin/env python3
"""
Test script for the loaders
This script tests ScoreReport aggregation, ReportLoader output files and GridLoader
"""

import json

import numpy as np
import pandas as pd
import pytest


def get_report_sample_data(partial=False):
    """Two folds of one 2-class cell, all three dataset kinds"""
    from src.classifiers import compute_metrics
    from src.loaders import ScoreReport

    report = ScoreReport(folds=2, partial=partial)
    predictions = {
        'original': ([0, 0, 1, 1], [[0, 0, 1, 1], [0, 1, 1, 1]]),
        'reduced': ([0, 0, 1, 1], [[1, 0, 1, 0], [0, 0, 0, 1]]),
        'synthetic': ([0, 0, 1, 1], [[0, 0, 1, 0], [0, 0, 1, 1]]),
    }
    for kind, (truth, folds) in predictions.items():
        for fold, predicted in enumerate(folds):
            metrics, confusion = compute_metrics(truth, predicted, num_classes=2)
            report.add_fold(2, 0.05, kind, fold, metrics, confusion)
    return report


def test_score_report():
    """Long-form scores, fold aggregates and averaged confusions"""
    print("=" * 50)
    print("Testing ScoreReport")
    print("=" * 50)

    from src.loaders import ScoreReport, cell_id

    assert cell_id(4, 0.05) == "C04P05"
    assert cell_id(10, 0.2) == "C10P20"

    report = get_report_sample_data()
    scores = report.scores_frame()
    assert len(scores) == 3 * 2 * 4
    assert list(scores.columns) == ['task', 'ratio', 'kind', 'fold', 'metric', 'value']

    summary = report.aggregate().set_index(['kind', 'metric'])
    # original folds score 1.0 and 0.75
    assert summary.loc[('original', 'accuracy'), 'mean'] == pytest.approx(0.875)
    assert summary.loc[('original', 'accuracy'), 'std'] == pytest.approx(0.125)
    assert summary.loc[('reduced', 'accuracy'), 'mean'] == pytest.approx(0.625)
    assert summary.loc[('synthetic', 'accuracy'), 'folds'] == 2

    confusions = report.mean_confusions()
    original = confusions[(2, 0.05, 'original')]
    assert np.allclose(original, [[0.75, 0.25], [0.0, 1.0]])
    assert np.allclose(original.sum(axis=1), 1.0)

    assert ScoreReport(folds=5).is_empty
    assert ScoreReport(folds=5).aggregate().empty
    with pytest.raises(ValueError):
        report.add_fold(2, 0.05, 'augmented', 0, *_perfect_fold())


def _perfect_fold():
    from src.classifiers import compute_metrics
    return compute_metrics([0, 1], [0, 1])


def test_report_loader(tmp_path):
    """scores.csv, confusions, summary.json and one chart per metric"""
    print("\n" + "=" * 50)
    print("Testing ReportLoader")
    print("=" * 50)

    from src.loaders import ReportLoader, ScoreReport

    report = get_report_sample_data()
    with ReportLoader({"dir": str(tmp_path / "out"), "save_svg": True}) as loader:
        result = loader.load(report)
    print(f"✅ Wrote {len(result['files_written'])} files")

    out = tmp_path / "out"
    assert result["success"]
    names = sorted(p.split('/')[-1] for p in result["files_written"])
    assert names == sorted(['scores.csv', 'confusions.csv', 'summary.json', 'confusion_C02P05.csv',
                            'accuracy.svg', 'precision.svg', 'recall.svg', 'f1.svg'])

    scores = pd.read_csv(out / "scores.csv")
    assert list(scores.columns) == ['task', 'ratio', 'kind', 'fold', 'metric', 'value', 'partial']
    assert not scores['partial'].any()
    assert len(scores) == 24

    summary = json.loads((out / "summary.json").read_text())
    assert summary["partial"] is False
    assert summary["folds"] == 2
    cell = summary["cells"]["C02P05"]
    assert cell["original"]["accuracy"]["mean"] == pytest.approx(0.875)
    assert set(cell) == {'task', 'ratio', 'original', 'reduced', 'synthetic'}

    confusion_lines = (out / "confusion_C02P05.csv").read_text().splitlines()
    assert confusion_lines[0] == "kind,truth,pred_0,pred_1"
    assert len(confusion_lines) == 1 + 3 * 2
    assert "original,1,0,1" in confusion_lines

    svg = (out / "accuracy.svg").read_text()
    assert svg.lstrip().startswith("<?xml")
    assert "C02P05" in svg

    # charts are byte-identical across runs
    with ReportLoader({"dir": str(tmp_path / "again")}) as loader:
        loader.load(report)
    assert (tmp_path / "again" / "f1.svg").read_bytes() == (out / "f1.svg").read_bytes()

    rebuilt = ScoreReport.from_files(out / "scores.csv", out / "confusions.csv")
    assert rebuilt.folds == 2
    assert len(rebuilt.confusions) == len(report.confusions)
    assert np.allclose(rebuilt.aggregate()['mean'], report.aggregate()['mean'])

    with pytest.raises(TypeError):
        with ReportLoader({"dir": str(tmp_path / "bad")}) as loader:
            loader.load({"scores": []})


def test_report_loader_partial_and_empty(tmp_path):
    """Partial runs are flagged; an empty report still writes headers"""
    print("\n" + "=" * 50)
    print("Testing partial and empty reports")
    print("=" * 50)

    from src.loaders import ReportLoader, ScoreReport

    with ReportLoader({"dir": str(tmp_path / "partial"), "save_svg": False}) as loader:
        result = loader.load(get_report_sample_data(partial=True))
    assert not any(p.endswith('.svg') for p in result["files_written"])
    assert pd.read_csv(tmp_path / "partial" / "scores.csv")['partial'].all()
    assert json.loads((tmp_path / "partial" / "summary.json").read_text())["partial"] is True
    assert ScoreReport.from_files(tmp_path / "partial" / "scores.csv").partial

    with ReportLoader({"dir": str(tmp_path / "empty")}) as loader:
        result = loader.load(ScoreReport(folds=5))
    header = (tmp_path / "empty" / "scores.csv").read_text().splitlines()
    assert header == ["task,ratio,kind,fold,metric,value,partial"]
    assert json.loads((tmp_path / "empty" / "summary.json").read_text())["cells"] == {}
    assert not any(p.endswith('.svg') for p in result["files_written"])


def test_grid_loader(tmp_path):
    """Flat CSV rows and 16-bit PGM previews"""
    print("\n" + "=" * 50)
    print("Testing GridLoader")
    print("=" * 50)

    from src.loaders import GridLoader, grid_to_pgm_bytes
    from src.utils.errors import DimensionError

    pgm = grid_to_pgm_bytes(np.array([[0.0, 1.0], [0.5, 1.0]]))
    header = b"P5\n2 2\n65535\n"
    assert pgm.startswith(header)
    pixels = np.frombuffer(pgm[len(header):], dtype='>u2')
    assert pixels.tolist() == [0, 65535, 32768, 65535]
    assert grid_to_pgm_bytes(np.full((3, 2), 7.0)) == b"P5\n2 3\n65535\n" + bytes(12)
    with pytest.raises(DimensionError):
        grid_to_pgm_bytes(np.zeros(4))

    grids = [np.arange(4.0).reshape(2, 2), np.full((2, 2), 0.1)]
    with GridLoader({"dir": str(tmp_path), "filename": "gen.csv", "pgm_previews": 1}) as loader:
        result = loader.load(grids, labels=["00000", "10000"])
    assert [p.split('/')[-1] for p in result["files_written"]] == ["gen.csv", "gen_0000.pgm"]
    lines = (tmp_path / "gen.csv").read_text().splitlines()
    assert lines == ["0.0,1.0,2.0,3.0,00000", "0.1,0.1,0.1,0.1,10000"]

    with GridLoader({"dir": str(tmp_path)}) as loader:
        with pytest.raises(DimensionError):
            loader.load(grids, labels=["00000"])
    with pytest.raises(RuntimeError):
        GridLoader().load(grids)


def run_all_tests():
    """Run all loader tests"""
    import tempfile
    from pathlib import Path

    print("Loader Test Suite")
    print("=" * 80)

    test_score_report()
    for test in (test_report_loader, test_report_loader_partial_and_empty, test_grid_loader):
        with tempfile.TemporaryDirectory() as tmp:
            test(Path(tmp))

    print("\n" + "=" * 80)
    print("All loader tests completed!")
    print("=" * 80)


if __name__ == "__main__":
    run_all_tests()
