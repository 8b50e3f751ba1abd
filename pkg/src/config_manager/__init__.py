"""
Configuration management: YAML/JSON loading with dot-path access and
overrides, plus the typed experiment configuration.
"""

from .config_manager import ConfigManager
from .experiment_config import TABLE_COUNTS, ExperimentConfig, table_counts

__all__ = [
    'ConfigManager',
    'ExperimentConfig',
    'TABLE_COUNTS',
    'table_counts',
]
