#!/usr/bin/env python3
"""
Test script for configuration handling
This script tests ConfigManager loading, overrides and validation, and ExperimentConfig
"""

import json

import pytest
import yaml


def get_config_sample_data():
    """A compact configuration with every section the pipeline reads"""
    return {
        'pipeline': {'name': 'Test run', 'logging_level': 'DEBUG', 'jobs': 2},
        'source': {
            'type': 'csv',
            'feature_count': 16,
            'csv': {'path': 'data/spectra.csv', 'header': 'auto'},
        },
        'generator': {'finest_side': 4, 'coarsest_side': 4, 'patch_side': 2},
        'classifier': {'hidden': [8], 'max_epochs': 5},
        'experiment': {'tasks': [10], 'reduction_ratios': [0.05, 0.1], 'folds': 3},
        'output': {'dir': 'results/test'},
    }


def test_load_yaml_and_json(tmp_path):
    """Single files, directories and sections"""
    print("=" * 50)
    print("Testing ConfigManager loading")
    print("=" * 50)

    from src.config_manager import ConfigManager
    from src.utils.errors import ConfigurationError

    config = get_config_sample_data()
    yaml_path = tmp_path / "run.yaml"
    yaml_path.write_text(yaml.safe_dump(config))
    manager = ConfigManager(str(yaml_path))
    assert manager.config_loaded
    assert manager.get_config_section('generator.patch_side') == 2
    assert manager.get_config_section('generator.missing', 'fallback') == 'fallback'
    assert manager.get_extractor_config() == {'path': 'data/spectra.csv', 'header': 'auto', 'type': 'csv'}

    parser_config = manager.get_parser_config()
    assert parser_config['task'] == 10
    assert parser_config['expected_features'] == 16

    json_path = tmp_path / "run.json"
    json_path.write_text(json.dumps(config))
    assert ConfigManager(str(json_path)).config_data == config

    sections = tmp_path / "sections"
    sections.mkdir()
    (sections / "experiment.yaml").write_text("folds: 4\n")
    (sections / "output.json").write_text('{"dir": "out"}')
    directory = ConfigManager()
    directory.load_config(str(sections))
    assert directory.get_experiment_config() == {'folds': 4}
    assert directory.get_output_config() == {'dir': 'out'}

    with pytest.raises(FileNotFoundError):
        ConfigManager().load_config(str(tmp_path / "missing.yaml"))
    bad = tmp_path / "bad.yaml"
    bad.write_text("experiment: [unclosed\n")
    with pytest.raises(ConfigurationError):
        ConfigManager().load_config(str(bad))
    (tmp_path / "run.ini").write_text("[x]\n")
    with pytest.raises(ConfigurationError):
        ConfigManager().load_config(str(tmp_path / "run.ini"))

    assert ConfigManager().get_config_summary() == {'status': 'No configuration loaded'}
    assert manager.get_config_summary()['tasks'] == [10]


def test_overrides():
    """section.key=value strings parsed as YAML scalars"""
    print("\n" + "=" * 50)
    print("Testing apply_overrides")
    print("=" * 50)

    from src.config_manager import ConfigManager
    from src.utils.errors import ConfigurationError

    manager = ConfigManager()
    manager.load_dict(get_config_sample_data())
    applied = manager.apply_overrides([
        'experiment.reduction_ratios=[0.05,0.2]',
        'generator.learning_rate=0.5',
        'output.save_svg=false',
        'source.csv.delimiter=;',
        'new.section.value=3',
    ])
    assert applied['experiment.reduction_ratios'] == [0.05, 0.2]
    assert manager.get_config_section('generator.learning_rate') == 0.5
    assert manager.get_output_config()['save_svg'] is False
    assert manager.get_extractor_config()['delimiter'] == ';'
    assert manager.get_config_section('new.section.value') == 3

    with pytest.raises(ConfigurationError):
        manager.apply_overrides(['experiment.folds'])
    with pytest.raises(ConfigurationError):
        manager.apply_overrides(['folds=3'])


def test_validation():
    """Source and experiment validation dictionaries"""
    print("\n" + "=" * 50)
    print("Testing configuration validation")
    print("=" * 50)

    from src.config_manager import ConfigManager

    manager = ConfigManager()
    manager.load_dict(get_config_sample_data())
    assert manager.validate_source_config() == {'valid': True, 'errors': [], 'warnings': []}
    assert manager.validate_experiment_config()['valid']

    manager.apply_overrides(['experiment.tasks=[3]', 'experiment.reduction_ratios=[0, 0.5]',
                             'experiment.folds=1', 'experiment.target_train_size=0'])
    result = manager.validate_experiment_config()
    assert not result['valid']
    assert len(result['errors']) == 4

    manager.apply_overrides(['source.type=kafka'])
    assert not manager.validate_source_config()['valid']
    manager.apply_overrides(['source.type=csv', 'source.csv.path=null'])
    assert manager.validate_source_config()['errors'] == ["CSV path is required"]

    texture = ConfigManager()
    texture.load_dict({'source': {'type': 'texture'}, 'experiment': {'use_table_counts': True}})
    assert texture.validate_source_config()['valid']
    assert texture.validate_experiment_config()['warnings']


def test_sample_config(tmp_path):
    """The generated sample config loads and validates"""
    print("\n" + "=" * 50)
    print("Testing create_sample_config")
    print("=" * 50)

    from src.config_manager import ConfigManager, ExperimentConfig

    for source_type in ('csv', 'texture'):
        path = tmp_path / f"{source_type}.yaml"
        ConfigManager().create_sample_config(str(path), source_type)
        manager = ConfigManager(str(path))
        assert manager.validate_source_config()['valid']
        assert manager.validate_experiment_config()['valid']
        cfg = ExperimentConfig.from_dict(manager.get_experiment_config())
        assert cfg.tasks == (4, 10)

    manager.save_config(str(tmp_path / "copy.json"), format='json')
    assert json.loads((tmp_path / "copy.json").read_text())['source']['type'] == 'texture'


def test_experiment_config():
    """Defaults, invariants and table counts"""
    print("\n" + "=" * 50)
    print("Testing ExperimentConfig")
    print("=" * 50)

    from src.config_manager import TABLE_COUNTS, ExperimentConfig, table_counts
    from src.utils.errors import ConfigurationError

    cfg = ExperimentConfig()
    assert cfg.reduction_ratios == (0.05, 0.10, 0.15, 0.20)
    assert cfg.folds == 5
    assert cfg.target_train_size == 908
    assert cfg.downsample_size == 1135
    assert cfg.reduction_counts(4, 0.05) is None

    for task in (4, 10):
        sums = [sum(TABLE_COUNTS[task][ratio]) for ratio in (0.05, 0.10, 0.15, 0.20)]
        assert sums == [46, 91, 152, 182]
        assert all(len(counts) == task for counts in TABLE_COUNTS[task].values())
    assert table_counts(4, 0.1) == (17, 33, 33, 8)
    assert table_counts(4, 0.3) is None
    assert table_counts(2, 0.05) is None

    tabled = ExperimentConfig(use_table_counts=True)
    assert tabled.reduction_counts(10, 0.05) == TABLE_COUNTS[10][0.05]
    assert tabled.reduction_counts(4, 0.5) is None

    legacy = ExperimentConfig.from_dict({'seed': 7, 'folds': 2, 'unknown': True})
    assert legacy.seeds == (7,)
    assert legacy.base_seed == 7
    assert ExperimentConfig.from_dict({'tasks': [4], 'seeds': [1, 2]}).to_dict()['seeds'] == [1, 2]

    for bad in ({'tasks': [3]}, {'tasks': []}, {'reduction_ratios': [1.5]}, {'folds': 1},
                {'target_train_size': 0}, {'seeds': []}):
        with pytest.raises(ConfigurationError):
            ExperimentConfig.from_dict(bad)


def run_all_tests():
    """Run all configuration tests"""
    import tempfile
    from pathlib import Path

    print("Configuration Test Suite")
    print("=" * 80)

    with tempfile.TemporaryDirectory() as tmp:
        test_load_yaml_and_json(Path(tmp))
    test_overrides()
    test_validation()
    with tempfile.TemporaryDirectory() as tmp:
        test_sample_config(Path(tmp))
    test_experiment_config()

    print("\n" + "=" * 80)
    print("All configuration tests completed!")
    print("=" * 80)


if __name__ == "__main__":
    run_all_tests()
