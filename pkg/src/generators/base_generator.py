import logging
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from tqdm import tqdm

from ..utils.errors import AugmentationError, DimensionError


class BaseGenerator(ABC):
    """
    Base class for all one-shot generators.

    A one-shot generator takes a single target grid and produces a new grid
    whose patch statistics match the target's. Generators are label-agnostic;
    callers carry labels alongside the grids they pass in.
    """

    def __init__(self, config: Dict[str, Any] = None):
        """
        Initialize the generator with optional configuration.

        Args:
            config: Dictionary with generator-specific settings
        """
        self.config = config or {}
        self.logger = logging.getLogger(self.__class__.__name__)

    @abstractmethod
    def generate(self, target: np.ndarray, seed: Optional[int] = None) -> np.ndarray:
        """
        Generate one grid from a single target grid.

        Returns: The generated grid, same shape as the target
        """
        pass

    @property
    @abstractmethod
    def base_seed(self) -> int:
        """Seed from which per-output seeds are derived."""
        pass

    def validate_input(self, samples: Sequence[np.ndarray]) -> bool:
        """
        Validate that samples is a sequence of finite square grids of one size.

        Returns: True if data is valid, False otherwise
        """
        if not isinstance(samples, (list, tuple)):
            return False

        sides = set()
        for grid in samples:
            grid = np.asarray(grid)
            if grid.ndim != 2 or grid.shape[0] != grid.shape[1]:
                return False
            if not np.all(np.isfinite(grid)):
                return False
            sides.add(grid.shape[0])

        return len(sides) <= 1

    def augment_dataset(self, samples: Sequence[np.ndarray],
                        per_sample_count: Union[int, Sequence[int]],
                        jobs: int = 1, show_progress: bool = False) -> List[np.ndarray]:
        """
        Generate per_sample_count grids for every input sample.

        Output j of sample i uses seed base_seed + offset, where offset counts
        outputs produced for earlier samples plus j, so the result order and
        content are independent of worker scheduling.

        Args:
            samples: Target grids
            per_sample_count: One count for all samples, or one count per sample
            jobs: Worker processes; 1 runs inline
            show_progress: Show a progress bar

        Returns:
            Generated grids, grouped by sample in input order
        """
        samples = list(samples)
        if not self.validate_input(samples):
            raise DimensionError("Expected a list of finite square grids of equal size")

        if isinstance(per_sample_count, (int, np.integer)):
            if per_sample_count < 1:
                raise ValueError(f"per_sample_count must be at least 1, got {per_sample_count}")
            counts = [int(per_sample_count)] * len(samples)
        else:
            counts = [int(c) for c in per_sample_count]
            if len(counts) != len(samples):
                raise ValueError(f"Got {len(counts)} counts for {len(samples)} samples")
            if any(c < 0 for c in counts):
                raise ValueError("Per-sample counts must be non-negative")

        tasks = []
        offset = 0
        for sample_index, (grid, count) in enumerate(zip(samples, counts)):
            for _ in range(count):
                tasks.append((sample_index, grid, self.base_seed + offset))
                offset += 1

        self.logger.info(f"Generating {len(tasks)} grids from {len(samples)} samples")

        outputs = []
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(self.generate, grid, seed) for _, grid, seed in tasks]
                for (sample_index, _, _), future in zip(tasks, futures):
                    outputs.append(self._collect(future.result, sample_index))
        else:
            for sample_index, grid, seed in tqdm(tasks, disable=not show_progress, desc="generate"):
                outputs.append(self._collect(lambda: self.generate(grid, seed), sample_index))

        return outputs

    def _collect(self, produce, sample_index: int) -> np.ndarray:
        try:
            return produce()
        except AugmentationError as e:
            self.logger.error(f"Generation failed for sample {sample_index}: {e}")
            e.args = (f"sample {sample_index}: {e.args[0] if e.args else e}",) + tuple(e.args[1:])
            raise

    def get_generator_info(self) -> Dict[str, str]:
        """
        Get information about this generator.

        Returns: Dictionary with generator metadata
        """
        return {
            "generator_type": self.__class__.__name__,
            "description": "Override in subclass",
        }
