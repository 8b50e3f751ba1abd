import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List


class BaseParser(ABC):
    """
    Base class for all data parsers.

    Each parser takes the raw records produced by an extractor and converts
    them into the dataset type the transformers work with.
    """

    def __init__(self, config: Dict[str, Any] = None):
        self.config = config or {}
        self.logger = logging.getLogger(self.__class__.__name__)

    @abstractmethod
    def parse(self, raw_data: List[Dict[str, Any]]) -> Any:
        """Parse raw records from an extractor."""
        pass

    def validate_input(self, raw_data: List[Dict[str, Any]]) -> bool:
        """
        Validate that the input is a list of {"line_number", "fields"} records.

        Returns: True if data is valid, False otherwise
        """
        if not isinstance(raw_data, list):
            return False
        for record in raw_data:
            if not isinstance(record, dict) or 'fields' not in record:
                return False
        return True

    def get_parser_info(self) -> Dict[str, str]:
        return {
            "parser_type": self.__class__.__name__,
            "supported_formats": "Override in subclass",
            "description": "Override in subclass"
        }
