import logging
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional, Tuple

from ..utils.errors import ConfigurationError

logger = logging.getLogger(__name__)

# per-class reduced-set sizes of the 908-sample training split, by task and ratio
TABLE_COUNTS: Dict[int, Dict[float, Tuple[int, ...]]] = {
    4: {
        0.05: (9, 16, 17, 4),
        0.10: (17, 33, 33, 8),
        0.15: (28, 56, 54, 14),
        0.20: (33, 67, 65, 17),
    },
    10: {
        0.05: (9, 4, 4, 4, 4, 5, 4, 4, 4, 4),
        0.10: (17, 8, 9, 8, 8, 9, 8, 9, 7, 8),
        0.15: (28, 14, 14, 14, 14, 14, 14, 14, 12, 14),
        0.20: (33, 17, 17, 17, 16, 17, 17, 17, 14, 17),
    },
}


def table_counts(task: int, ratio: float) -> Optional[Tuple[int, ...]]:
    for known_ratio, counts in TABLE_COUNTS.get(int(task), {}).items():
        if abs(known_ratio - ratio) < 1e-9:
            return counts
    return None


@dataclass(frozen=True)
class ExperimentConfig:
    """
    What to evaluate: tasks, reduction ratios, folds and dataset sizes.

    target_train_size None means "same size as the original training split".
    Each entry of seeds is one full repetition of the cross-validation.
    """

    tasks: Tuple[int, ...] = (4, 10)
    reduction_ratios: Tuple[float, ...] = (0.05, 0.10, 0.15, 0.20)
    folds: int = 5
    target_train_size: Optional[int] = 908
    downsample_size: Optional[int] = 1135
    seeds: Tuple[int, ...] = (0,)
    use_table_counts: bool = False
    standardize: bool = True
    input_path: Optional[str] = None
    output_dir: str = 'results'

    def __post_init__(self):
        object.__setattr__(self, 'tasks', tuple(int(t) for t in self.tasks))
        object.__setattr__(self, 'reduction_ratios', tuple(float(r) for r in self.reduction_ratios))
        object.__setattr__(self, 'seeds', tuple(int(s) for s in self.seeds))

        for task in self.tasks:
            if task not in (2, 4, 10):
                raise ConfigurationError(f"Unsupported task {task}; expected 2, 4 or 10")
        if not self.tasks:
            raise ConfigurationError("At least one task is required")
        for ratio in self.reduction_ratios:
            if not 0.0 < ratio <= 1.0:
                raise ConfigurationError(f"Reduction ratio must lie in (0, 1], got {ratio}")
        if self.folds < 2:
            raise ConfigurationError(f"folds must be at least 2, got {self.folds}")
        for name in ('target_train_size', 'downsample_size'):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigurationError(f"{name} must be positive, got {value}")
        if not self.seeds:
            raise ConfigurationError("At least one seed is required")

    @property
    def base_seed(self) -> int:
        return self.seeds[0]

    def reduction_counts(self, task: int, ratio: float) -> Optional[Tuple[int, ...]]:
        """Explicit per-class counts for a cell when table counts are enabled."""
        if not self.use_table_counts:
            return None
        counts = table_counts(task, ratio)
        if counts is None:
            logger.warning(f"No table counts for task {task} at ratio {ratio}; using ceil(ratio * support)")
        return counts

    @classmethod
    def from_dict(cls, config: Optional[Dict[str, Any]] = None) -> 'ExperimentConfig':
        config = dict(config or {})
        if 'seed' in config and 'seeds' not in config:
            config['seeds'] = [config.pop('seed')]
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(config) - known)
        if unknown:
            logger.warning(f"Ignoring unknown experiment keys: {unknown}")
        return cls(**{k: v for k, v in config.items() if k in known})

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        for key in ('tasks', 'reduction_ratios', 'seeds'):
            data[key] = list(data[key])
        return data
