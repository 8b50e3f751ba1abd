#!/usr/bin/env python3
"""
Test script for the augmentation pipeline
This script tests bounds_report, exit codes, the CLI and end-to-end runs on the texture task
"""

import json

import numpy as np
import pandas as pd
import pytest


def get_tiny_overrides(out_dir):
    """Shrinks the smoke configuration to a few seconds of work"""
    return [
        'source.texture.num_classes=2', 'source.texture.per_class=6', 'source.texture.side=8',
        'generator.finest_side=8', 'generator.coarsest_side=6', 'generator.patch_side=3',
        'generator.num_projections=8', 'generator.steps_per_scale=3',
        'classifier.hidden=[8]', 'classifier.max_epochs=3',
        'experiment.tasks=[2]', 'experiment.reduction_ratios=[0.5]',
        f'output.dir={out_dir}', 'output.save_svg=false',
    ]


def get_tiny_pipeline(out_dir, *extra):
    from src.augment_pipeline import SMOKE_CONFIG, AugmentationPipeline
    return AugmentationPipeline(config_data=SMOKE_CONFIG, overrides=get_tiny_overrides(out_dir) + list(extra))


def test_bounds_report():
    """Per-pair bound rows and the dataset-level transport row"""
    print("=" * 50)
    print("Testing bounds_report")
    print("=" * 50)

    from src.augment_pipeline import bounds_report
    from src.utils.errors import DimensionError
    from src.utils.seeding import make_rng

    zeros = np.zeros((45, 45))
    table = bounds_report([zeros], [zeros.copy()], 11)
    row = table.rows.iloc[0]
    assert row['factor'] == 1225.0
    assert row['lhs'] == row['rhs'] == row['slack'] == 0.0
    assert table.dataset['exact_w1'] == 0.0

    rng = make_rng(30)
    targets = [rng.normal(size=(8, 8)) for _ in range(9)]
    generated = [t + rng.normal(scale=0.5, size=(8, 8)) for t in targets]
    table = bounds_report(targets, generated, 3)
    assert list(table.rows.columns) == ['pair', 'delta_hat', 'lhs', 'factor', 'rhs', 'slack']
    assert len(table.rows) == 9
    assert (table.rows['factor'] == 36.0).all()
    assert (table.rows['slack'] >= 0).all()
    assert table.dataset['pairs'] == 7
    assert table.dataset['exact_w1'] <= table.dataset['factor_times_mean_delta'] + 1e-9

    with pytest.raises(DimensionError):
        bounds_report(targets, generated[:2], 3)
    with pytest.raises(DimensionError):
        bounds_report([np.zeros((8, 8))], [np.zeros((7, 7))], 3)


def test_exit_codes():
    """Error classes map onto process exit codes"""
    print("\n" + "=" * 50)
    print("Testing exit_code_for")
    print("=" * 50)

    from src.augment_pipeline import exit_code_for
    from src.utils.errors import (ConfigurationError, DataFormatError, DimensionError,
                                  DivergenceError, ExperimentError, SamplingError,
                                  UnknownClassError)

    assert exit_code_for(ConfigurationError("bad folds")) == 1
    assert exit_code_for(FileNotFoundError("config.yaml")) == 1
    assert exit_code_for(DataFormatError("short row", 3)) == 2
    assert exit_code_for(UnknownClassError("token")) == 2
    assert exit_code_for(DimensionError("width")) == 2
    assert exit_code_for(SamplingError("too few")) == 2
    assert exit_code_for(DivergenceError("nan", scale_index=2)) == 3
    wrapped = ExperimentError("C04P05 fold 1: nan", context={'fold': 1}, cause=DivergenceError("nan"))
    assert exit_code_for(wrapped) == 3
    assert exit_code_for(ExperimentError("no cause")) == 1


def test_load_dataset(tmp_path):
    """CSV spectrum loading through extractor and parser"""
    print("\n" + "=" * 50)
    print("Testing load_dataset")
    print("=" * 50)

    from src.augment_pipeline import load_dataset
    from src.utils.errors import DataFormatError

    path = tmp_path / "spectra.csv"
    path.write_text("1,2,3,4,00000\n5,6,7,8,11000\n")
    data = load_dataset(str(path), 4, expected_features=4)
    assert data.classes.tolist() == [0, 3]
    assert load_dataset(str(path), 2, expected_features=4).classes.tolist() == [0, 1]

    with pytest.raises(DataFormatError) as info:
        load_dataset(str(path), 4)
    assert info.value.line_number == 1


def test_pipeline_run(tmp_path):
    """A tiny texture evaluation writes a complete report"""
    print("\n" + "=" * 50)
    print("Testing AugmentationPipeline.run")
    print("=" * 50)

    out = tmp_path / "run"
    pipeline = get_tiny_pipeline(out, 'output.save_checkpoints=true')
    info = pipeline.get_pipeline_info()
    assert info['cells'] == ['C02P50']
    assert info['extractor_class'] == 'TextureExtractor'
    assert pipeline.validate_configuration()['valid']

    result = pipeline.run()
    print(f"✅ Pipeline finished with exit code {result['exit_code']}")
    assert result['success']
    assert result['exit_code'] == 0
    assert result['pipeline_stats']['samples_loaded'] == 12
    assert result['pipeline_stats']['cells_completed'] == 2

    scores = pd.read_csv(out / "scores.csv")
    assert len(scores) == 2 * 3 * 4
    assert set(scores['kind']) == {'original', 'reduced', 'synthetic'}
    assert scores['value'].between(0, 1).all()
    summary = json.loads((out / "summary.json").read_text())
    assert summary['partial'] is False
    assert set(summary['cells']) == {'C02P50'}
    assert (out / "confusion_C02P50.csv").is_file()
    checkpoints = sorted(p.name for p in (out / "checkpoints").iterdir())
    assert len(checkpoints) == 6
    assert "C02P50_synthetic_fold1.ckpt" in checkpoints

    again = get_tiny_pipeline(tmp_path / "again").run()
    assert again['success']
    assert (tmp_path / "again" / "scores.csv").read_bytes() == (out / "scores.csv").read_bytes()


def test_pipeline_partial_report_on_divergence(tmp_path, monkeypatch):
    """A diverging job stops the run, keeps earlier cells and exits with 3"""
    print("\n" + "=" * 50)
    print("Testing partial reports")
    print("=" * 50)

    import src.augment_pipeline as augment_pipeline
    from src.utils.errors import DivergenceError

    real_train = augment_pipeline.train
    calls = []

    def flaky_train(model, data, cfg):
        calls.append(cfg.seed)
        # fold 0 has three classifiers; the fourth is fold 1's original
        if len(calls) > 3:
            raise DivergenceError("Non-finite training loss in epoch 0", epoch=0)
        return real_train(model, data, cfg)

    monkeypatch.setattr(augment_pipeline, 'train', flaky_train)
    out = tmp_path / "partial"
    result = get_tiny_pipeline(out).run()
    assert not result['success']
    assert result['exit_code'] == 3
    assert "fold 1" in result['error']

    scores = pd.read_csv(out / "scores.csv")
    assert scores['partial'].all()
    assert set(scores['fold']) == {0}
    assert json.loads((out / "summary.json").read_text())['partial'] is True


def test_pipeline_missing_input(tmp_path):
    """A missing spectrum file is a data error"""
    print("\n" + "=" * 50)
    print("Testing missing input")
    print("=" * 50)

    from src.augment_pipeline import AugmentationPipeline

    pipeline = AugmentationPipeline(overrides=['source.type=csv',
                                               f'source.csv.path={tmp_path / "missing.csv"}',
                                               f'output.dir={tmp_path}'])
    assert not pipeline.validate_configuration()['valid']
    result = pipeline.run()
    assert result['exit_code'] == 2
    assert not (tmp_path / "scores.csv").exists()


def test_augment_and_bounds_check(tmp_path):
    """augment writes labelled grids; bounds_check writes the bound table"""
    print("\n" + "=" * 50)
    print("Testing augment / bounds_check")
    print("=" * 50)

    pipeline = get_tiny_pipeline(tmp_path)
    result = pipeline.augment(count=2, out_dir=str(tmp_path / "aug"), pgm_previews=1)
    assert len(result['files_written']) == 2
    lines = (tmp_path / "aug" / "generated.csv").read_text().splitlines()
    assert len(lines) == 24
    assert all(len(line.split(',')) == 65 for line in lines)
    assert [line.split(',')[-1] for line in lines[:2]] == ['0', '0']
    assert lines[-1].split(',')[-1] == '1'

    table = pipeline.bounds_check(pairs=3, out_dir=str(tmp_path / "bounds"))
    assert len(table.rows) == 3
    assert (table.rows['factor'] == 36.0).all()
    assert (table.rows['slack'] >= 0).all()
    assert table.dataset['slack'] >= -1e-9
    assert (tmp_path / "bounds" / "bounds.csv").is_file()
    assert json.loads((tmp_path / "bounds" / "bounds.json").read_text())['pairs'] == 3


def test_main_cli(tmp_path, capsys):
    """Subcommands, overrides and exit codes of the command line"""
    print("\n" + "=" * 50)
    print("Testing main")
    print("=" * 50)

    from src.augment_pipeline import main

    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(['evaluate', '--task', '3'])
    assert info.value.code == 1

    assert main(['evaluate', '--config', str(tmp_path / "missing.yaml")]) == 1
    assert main(['evaluate', '--input', str(tmp_path / "missing.csv"), '--out', str(tmp_path / "x")]) == 2
    short = tmp_path / "short.csv"
    short.write_text("1,2,3,00000\n")
    assert main(['evaluate', '--input', str(short), '--task', '4', '--out', str(tmp_path / "x")]) == 2
    assert main(['report', '--out', str(tmp_path / "nothing")]) == 2

    assert main(['smoke', '--validate', '--out', str(tmp_path / "v")]) == 0
    assert "Valid: True" in capsys.readouterr().out

    out = tmp_path / "cli"
    argv = ['smoke', '--out', str(out), '--folds', '2', '--seed', '3', '--gen-steps-per-scale', '2',
            '--clf-max-epochs', '2']
    for override in get_tiny_overrides(out):
        argv += ['--set', override]
    assert main(argv) == 0
    assert "=== Pipeline Execution Results ===" in capsys.readouterr().out

    (out / "summary.json").unlink()
    assert main(['report', '--out', str(out), '--no-svg']) == 0
    assert json.loads((out / "summary.json").read_text())['cells']['C02P50']['task'] == 2


@pytest.mark.slow
def test_parallel_jobs_match_serial(tmp_path):
    """Worker processes do not change any score"""
    print("\n" + "=" * 50)
    print("Testing parallel determinism")
    print("=" * 50)

    serial = get_tiny_pipeline(tmp_path / "serial").run()
    parallel = get_tiny_pipeline(tmp_path / "parallel", 'pipeline.jobs=2').run()
    assert serial['success'] and parallel['success']
    assert ((tmp_path / "serial" / "scores.csv").read_bytes()
            == (tmp_path / "parallel" / "scores.csv").read_bytes())


@pytest.mark.slow
def test_smoke_run(tmp_path):
    """Built-in 4-class texture task: synthetic training beats the reduced set"""
    print("\n" + "=" * 50)
    print("Testing the smoke run")
    print("=" * 50)

    from src.augment_pipeline import main

    assert main(['smoke', '--out', str(tmp_path / "first")]) == 0
    assert main(['smoke', '--out', str(tmp_path / "second")]) == 0
    first = (tmp_path / "first" / "scores.csv").read_bytes()
    assert first == (tmp_path / "second" / "scores.csv").read_bytes()

    summary = json.loads((tmp_path / "first" / "summary.json").read_text())
    cell = summary['cells']['C04P05']
    accuracy = {kind: cell[kind]['accuracy']['mean'] for kind in ('original', 'reduced', 'synthetic')}
    print(f"accuracy: {accuracy}")
    assert accuracy['original'] >= accuracy['synthetic'] > accuracy['reduced']
    assert accuracy['synthetic'] - accuracy['reduced'] >= 0.10
    for metric in ('accuracy', 'precision', 'recall', 'f1'):
        assert (tmp_path / "first" / f"{metric}.svg").is_file()


def run_all_tests():
    """Run the fast pipeline tests"""
    import tempfile
    from pathlib import Path

    print("Pipeline Test Suite")
    print("=" * 80)

    test_bounds_report()
    test_exit_codes()
    for test in (test_load_dataset, test_pipeline_run, test_pipeline_missing_input,
                 test_augment_and_bounds_check):
        with tempfile.TemporaryDirectory() as tmp:
            test(Path(tmp))

    print("\n" + "=" * 80)
    print("All pipeline tests completed!")
    print("=" * 80)


if __name__ == "__main__":
    run_all_tests()
