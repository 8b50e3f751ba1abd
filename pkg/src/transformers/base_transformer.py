import logging
from abc import ABC, abstractmethod
from typing import Any, Dict

from ..classifiers.dataset import LabeledDataset


class BaseTransformer(ABC):
    """
    Base class for all dataset transformers.

    Each transformer takes a LabeledDataset and returns a new one (a subset,
    a rescaled copy or a synthetic set); inputs are never modified.
    """

    def __init__(self, config: Dict[str, Any] = None):
        """
        Initialize the transformer with optional configuration.

        Args:
            config: Dictionary with transformer-specific settings
        """
        self.config = config or {}
        self.logger = logging.getLogger(self.__class__.__name__)
        self.stats: Dict[str, Any] = {}

    @abstractmethod
    def transform(self, dataset: LabeledDataset, **kwargs) -> LabeledDataset:
        """Apply the transformation and return the resulting dataset."""
        pass

    def validate_input(self, dataset: Any) -> bool:
        """
        Validate that the input is a LabeledDataset.

        Returns: True if data is valid, False otherwise
        """
        return isinstance(dataset, LabeledDataset)

    def _require_dataset(self, dataset: Any):
        if not self.validate_input(dataset):
            raise TypeError(f"{self.__class__.__name__} expects a LabeledDataset, got {type(dataset).__name__}")

    def get_transformer_info(self) -> Dict[str, str]:
        return {
            "transformer_type": self.__class__.__name__,
            "description": "Override in subclass",
            "supported_operations": "Override in subclass"
        }
