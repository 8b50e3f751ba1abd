import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List


class BaseExtractor(ABC):
    """
    Blueprint that all data extractors follow.

    Every extractor yields raw records of the same shape,
    {"line_number": int, "fields": [feature values..., class token]},
    so a single parser can turn any source into a LabeledDataset.
    """

    def __init__(self, config: Dict[str, Any] = None):
        self.config = config or {}
        self.connection = None
        self.logger = logging.getLogger(self.__class__.__name__)

    @abstractmethod
    def connect(self) -> bool:
        """Open the source. Returns: True if the source is ready"""
        pass

    @abstractmethod
    def extract(self) -> List[Dict[str, Any]]:
        """Pull every record from the source."""
        pass

    @abstractmethod
    def disconnect(self) -> bool:
        """Release the source. Returns: True if it was cleaned up"""
        pass

    def get_extractor_info(self) -> Dict[str, str]:
        return {
            "extractor_type": self.__class__.__name__,
            "description": "Override in subclass",
        }

    def __enter__(self):
        """Context manager entry - open the source."""
        self.connect()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Context manager exit - release the source."""
        self.disconnect()
