import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

import yaml

from ..utils.errors import ConfigurationError

SOURCE_TYPES = ('csv', 'texture')
TASKS = (2, 4, 10)


class ConfigManager:
    """
    Configuration manager for augmentation experiment settings.

    Loads YAML or JSON configuration files (a single file, or a directory whose
    files become sections named after their stems) and offers a unified view of
    the pipeline, source, generator, classifier, experiment, transport and
    output sections.
    """

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize the configuration manager.

        Args:
            config_path: Path to configuration file or directory
        """
        self.config_path = config_path
        self.config_data: Dict[str, Any] = {}
        self.config_loaded = False
        self.logger = logging.getLogger(self.__class__.__name__)

        if config_path and os.path.exists(config_path):
            self.load_config(config_path)

    def load_config(self, config_path: str) -> Dict[str, Any]:
        """
        Load configuration from file or directory.

        Args:
            config_path: Path to configuration file (.yaml, .yml, .json) or directory

        Returns:
            Dictionary containing configuration data

        Raises:
            FileNotFoundError: If config path doesn't exist
            ConfigurationError: If config format is invalid
        """
        path = Path(config_path)

        if not path.exists():
            raise FileNotFoundError(f"Configuration path not found: {config_path}")

        if path.is_file():
            self.config_data = self._load_single_config(path)
        elif path.is_dir():
            self.config_data = self._load_config_directory(path)
        else:
            raise ConfigurationError(f"Invalid config path: {config_path}")

        self.config_path = str(path)
        self.config_loaded = True

        self._validate_config()

        return self.config_data

    def load_dict(self, config_data: Dict[str, Any]) -> Dict[str, Any]:
        """Use an in-memory configuration dictionary."""
        self.config_data = dict(config_data)
        self.config_loaded = True
        self._validate_config()
        return self.config_data

    def _load_single_config(self, file_path: Path) -> Dict[str, Any]:
        try:
            with open(file_path, 'r', encoding='utf-8') as file:
                if file_path.suffix.lower() in ['.yaml', '.yml']:
                    return yaml.safe_load(file) or {}
                elif file_path.suffix.lower() == '.json':
                    return json.load(file)
                else:
                    raise ConfigurationError(f"Unsupported config file format: {file_path.suffix}")

        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML format in {file_path}: {e}")
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Invalid JSON format in {file_path}: {e}")

    def _load_config_directory(self, dir_path: Path) -> Dict[str, Any]:
        config_data = {}
        config_files = []

        for ext in ['*.yaml', '*.yml', '*.json']:
            config_files.extend(dir_path.glob(ext))

        if not config_files:
            raise ConfigurationError(f"No configuration files found in {dir_path}")

        # filename stem becomes the section name
        for config_file in sorted(config_files):
            config_data[config_file.stem] = self._load_single_config(config_file)

        return config_data

    def _validate_config(self):
        if not isinstance(self.config_data, dict):
            raise ConfigurationError("Configuration must be a dictionary")

        for section in ['source', 'experiment']:
            if section not in self.config_data:
                self.logger.warning(f"Section '{section}' not found in configuration, using defaults")

    def get_pipeline_config(self) -> Dict[str, Any]:
        return self.config_data.get('pipeline', {}) or {}

    def get_source_config(self) -> Dict[str, Any]:
        return self.config_data.get('source', {}) or {}

    def get_extractor_config(self) -> Dict[str, Any]:
        """
        Get extractor configuration based on source type.

        Returns:
            The csv or texture sub-section, with the source type recorded
        """
        source_config = self.get_source_config()
        source_type = str(source_config.get('type', 'csv')).lower()
        extractor_config = dict(source_config.get(source_type, {}) or {})
        extractor_config.setdefault('type', source_type)
        return extractor_config

    def get_parser_config(self) -> Dict[str, Any]:
        """
        Get parser configuration, defaulting the task from the experiment section.

        Returns:
            Parser configuration dictionary
        """
        parser_config = dict(self.get_source_config().get('parser', {}) or {})
        tasks = self.get_experiment_config().get('tasks') or [4]
        parser_config.setdefault('task', tasks[0])
        parser_config.setdefault('expected_features', self.get_source_config().get('feature_count', 2025))
        return parser_config

    def get_generator_config(self) -> Dict[str, Any]:
        return self.config_data.get('generator', {}) or {}

    def get_classifier_config(self) -> Dict[str, Any]:
        return self.config_data.get('classifier', {}) or {}

    def get_experiment_config(self) -> Dict[str, Any]:
        return self.config_data.get('experiment', {}) or {}

    def get_transport_config(self) -> Dict[str, Any]:
        return self.config_data.get('transport', {}) or {}

    def get_output_config(self) -> Dict[str, Any]:
        return self.config_data.get('output', {}) or {}

    def get_config_section(self, section_path: str, default: Any = None) -> Any:
        """
        Get configuration value using dot notation path.

        Args:
            section_path: Dot-separated path (e.g., 'generator.patch_side')
            default: Default value if path not found

        Returns:
            Configuration value or default
        """
        value = self.config_data
        for key in section_path.split('.'):
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default
        return value

    def set_config_value(self, section_path: str, value: Any):
        """
        Set configuration value using dot notation path.

        Args:
            section_path: Dot-separated path to configuration value
            value: Value to set
        """
        keys = section_path.split('.')
        current = self.config_data

        for key in keys[:-1]:
            if key not in current or not isinstance(current[key], dict):
                current[key] = {}
            current = current[key]

        current[keys[-1]] = value

    def apply_overrides(self, overrides: Iterable[str]) -> Dict[str, Any]:
        """
        Apply 'section.key=value' override strings.

        Values are parsed as YAML scalars, so '0.5' becomes a float, '[4, 10]'
        a list and 'true' a bool.

        Returns:
            Dictionary of the applied path -> value pairs
        """
        applied = {}
        for override in overrides or []:
            if '=' not in override:
                raise ConfigurationError(f"Override must look like section.key=value, got {override!r}")
            path, raw_value = override.split('=', 1)
            path = path.strip()
            if not path or '.' not in path:
                raise ConfigurationError(f"Override path needs a section, got {path!r}")
            try:
                value = yaml.safe_load(raw_value)
            except yaml.YAMLError as e:
                raise ConfigurationError(f"Cannot parse override value {raw_value!r}: {e}")
            self.set_config_value(path, value)
            applied[path] = value
            self.logger.debug(f"Override {path} = {value!r}")
        if applied:
            self.config_loaded = True
        return applied

    def save_config(self, output_path: Optional[str] = None, format: str = 'yaml'):
        """
        Save current configuration to file.

        Args:
            output_path: Path to save file (defaults to original path)
            format: Output format ('yaml' or 'json')
        """
        if not output_path:
            if not self.config_path:
                raise ConfigurationError("No output path specified and no original config path available")
            output_path = self.config_path

        output_path = Path(output_path)

        with open(output_path, 'w', encoding='utf-8') as file:
            if format.lower() == 'yaml':
                yaml.safe_dump(self.config_data, file, default_flow_style=False, indent=2, sort_keys=False)
            elif format.lower() == 'json':
                json.dump(self.config_data, file, indent=2, ensure_ascii=False)
            else:
                raise ConfigurationError(f"Unsupported output format: {format}")

    def validate_source_config(self) -> Dict[str, Any]:
        """
        Validate source configuration and return validation results.

        Returns:
            Dictionary with validation results
        """
        source_config = self.get_source_config()
        validation_results = {
            'valid': True,
            'errors': [],
            'warnings': []
        }

        source_type = source_config.get('type')
        if not source_type:
            validation_results['valid'] = False
            validation_results['errors'].append("Source type is required")
        elif str(source_type).lower() not in SOURCE_TYPES:
            validation_results['valid'] = False
            validation_results['errors'].append(f"Unsupported source type: {source_type}")
        elif str(source_type).lower() == 'csv':
            if not (source_config.get('csv') or {}).get('path'):
                validation_results['valid'] = False
                validation_results['errors'].append("CSV path is required")
        else:
            texture = source_config.get('texture') or {}
            if texture.get('num_classes', 4) < 2:
                validation_results['valid'] = False
                validation_results['errors'].append("Texture task needs at least 2 classes")

        return validation_results

    def validate_experiment_config(self) -> Dict[str, Any]:
        """
        Validate experiment configuration and return validation results.

        Returns:
            Dictionary with validation results
        """
        experiment = self.get_experiment_config()
        validation_results = {
            'valid': True,
            'errors': [],
            'warnings': []
        }

        for task in experiment.get('tasks', [4, 10]):
            if task not in TASKS:
                validation_results['errors'].append(f"Unsupported task: {task}")

        for ratio in experiment.get('reduction_ratios', [0.05, 0.10, 0.15, 0.20]):
            if not isinstance(ratio, (int, float)) or not 0 < ratio <= 1:
                validation_results['errors'].append(f"Reduction ratio must lie in (0, 1]: {ratio}")

        if experiment.get('folds', 5) < 2:
            validation_results['errors'].append("At least 2 folds are required")

        for key in ('target_train_size', 'downsample_size'):
            value = experiment.get(key)
            if value is not None and value < 1:
                validation_results['errors'].append(f"{key} must be positive")

        if experiment.get('use_table_counts') and self.get_source_config().get('type') == 'texture':
            validation_results['warnings'].append("Table counts refer to the 1135-row spectrum set")

        validation_results['valid'] = not validation_results['errors']
        return validation_results

    def get_config_summary(self) -> Dict[str, Any]:
        """
        Get a summary of the current configuration.

        Returns:
            Configuration summary dictionary
        """
        if not self.config_loaded:
            return {'status': 'No configuration loaded'}

        experiment = self.get_experiment_config()
        return {
            'config_path': self.config_path,
            'source_type': self.get_source_config().get('type'),
            'tasks': experiment.get('tasks'),
            'reduction_ratios': experiment.get('reduction_ratios'),
            'folds': experiment.get('folds'),
            'generator': self.get_generator_config(),
            'classifier': self.get_classifier_config(),
            'pipeline_settings': self.get_pipeline_config()
        }

    def create_sample_config(self, output_path: str, source_type: str = 'csv'):
        """
        Create a sample configuration file.

        Args:
            output_path: Path where to save the sample config
            source_type: Type of data source ('csv' or 'texture')
        """
        sample_config = self._generate_sample_config(source_type)

        with open(output_path, 'w', encoding='utf-8') as file:
            yaml.safe_dump(sample_config, file, default_flow_style=False, indent=2, sort_keys=False)

        self.logger.info(f"Sample configuration created at: {output_path}")

    def _generate_sample_config(self, source_type: str) -> Dict[str, Any]:
        if source_type.lower() == 'csv':
            source_config = {
                'type': 'csv',
                'feature_count': 2025,
                'csv': {
                    'path': 'data/dronerf_1135.csv',
                    'header': 'auto',
                    'delimiter': ','
                },
                'parser': {
                    'token_map': None
                }
            }
        else:
            source_config = {
                'type': 'texture',
                'feature_count': 256,
                'texture': {
                    'num_classes': 4,
                    'per_class': 60,
                    'side': 16,
                    'noise': 0.3,
                    'seed': 7
                }
            }

        return {
            'pipeline': {
                'name': 'Sample Augmentation Pipeline',
                'description': 'Reduced vs synthetic vs original training sets',
                'version': '1.0.0',
                'logging_level': 'INFO',
                'log_file': None,
                'jobs': 1,
                'seed': 0
            },
            'source': source_config,
            'generator': {
                'finest_side': 45,
                'coarsest_side': 21,
                'scale_rate': 0.95,
                'patch_side': 11,
                'num_projections': 128,
                'learning_rate': 0.02,
                'steps_per_scale': 300,
                'noise_sigma': 1.0,
                'seed': 0,
                'optimizer': 'adam'
            },
            'classifier': {
                'hidden': [128, 128, 128],
                'learning_rate': 0.0001,
                'batch_size': 5,
                'patience_fraction': 0.02,
                'patience_unit': 'updates',
                'max_epochs': 500,
                'seed': 0
            },
            'experiment': {
                'tasks': [4, 10],
                'reduction_ratios': [0.05, 0.10, 0.15, 0.20],
                'folds': 5,
                'target_train_size': 908,
                'downsample_size': 1135,
                'use_table_counts': False,
                'standardize': True
            },
            'transport': {
                'assignment_cap': 2000,
                'bounds_pairs': 5
            },
            'output': {
                'dir': 'results',
                'save_svg': True,
                'save_checkpoints': False
            }
        }
