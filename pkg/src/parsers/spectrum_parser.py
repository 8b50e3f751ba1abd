import math
from typing import Any, Dict, List, Optional

import numpy as np

from ..classifiers.dataset import LabeledDataset
from ..utils.errors import ConfigurationError, DataFormatError, EmptyDatasetError, UnknownClassError
from .base_parser import BaseParser

# 5-digit labels: drone present, drone type (2 digits), flight mode (2 digits)
BUI_CODES = ('00000', '10000', '10001', '10010', '10011',
             '10100', '10101', '10110', '10111', '11000')

CLASS_NAMES = {
    2: ['no_drone', 'drone'],
    4: ['background', 'bebop', 'ar_drone', 'phantom'],
    10: ['background',
         'bebop_on', 'bebop_hovering', 'bebop_flying', 'bebop_video',
         'ar_on', 'ar_hovering', 'ar_flying', 'ar_video',
         'phantom_on'],
}


def default_token_map(task: int) -> Dict[str, int]:
    """Class index of every 5-digit label code for a 2-, 4- or 10-class task."""
    if task == 10:
        return {code: i for i, code in enumerate(BUI_CODES)}
    if task == 4:
        drone_types = {'00': 1, '01': 2, '10': 3}
        return {code: 0 if code[0] == '0' else drone_types[code[1:3]] for code in BUI_CODES}
    if task == 2:
        return {code: int(code[0]) for code in BUI_CODES}
    raise ConfigurationError(f"Unsupported task {task}; expected 2, 4 or 10")


class SpectrumParser(BaseParser):
    """
    Turns raw spectrum rows into a LabeledDataset.

    Expected config format:
    {
        "task": 4,                    # 2, 4 or 10 classes
        "expected_features": 2025,
        "token_map": {"00000": 0}     # optional, replaces the default map
    }

    A class token is looked up in the token map first; otherwise a plain
    integer token 0..C-1 is taken as the class index.
    """

    def __init__(self, config: Dict[str, Any] = None):
        super().__init__(config)
        self.task = int(self.config.get('task', 4))
        self.expected_features = int(self.config.get('expected_features', 2025))
        token_map = self.config.get('token_map')
        if token_map:
            self.token_map = {str(k): int(v) for k, v in token_map.items()}
            self.num_classes = int(self.config.get('num_classes', max(self.token_map.values()) + 1))
        else:
            self.token_map = default_token_map(self.task)
            self.num_classes = self.task
        self.class_names = self.config.get('class_names') or CLASS_NAMES.get(
            self.num_classes, [f"class_{i}" for i in range(self.num_classes)]
        )

    def parse(self, raw_data: List[Dict[str, Any]]) -> LabeledDataset:
        """
        Parse records into features and one-hot labels.

        Raises:
            EmptyDatasetError: no records
            DataFormatError: wrong field count or non-finite feature, with line number
            UnknownClassError: class token outside the task
        """
        if not self.validate_input(raw_data):
            raise DataFormatError("Invalid input format - expected list of records with 'fields'")
        if not raw_data:
            raise EmptyDatasetError("No spectrum rows to parse")

        features = np.empty((len(raw_data), self.expected_features))
        classes = np.empty(len(raw_data), dtype=np.int64)
        for i, record in enumerate(raw_data):
            line_number = record.get('line_number', i + 1)
            features[i], classes[i] = self._parse_single_record(record['fields'], line_number)

        self.logger.info(f"Parsed {len(raw_data)} rows into {self.num_classes} classes "
                         f"(supports {np.bincount(classes, minlength=self.num_classes).tolist()})")
        return LabeledDataset.from_indices(features, classes, self.num_classes,
                                           class_names=list(self.class_names))

    def _parse_single_record(self, fields: List[Any], line_number: int):
        expected_fields = self.expected_features + 1
        if len(fields) != expected_fields:
            raise DataFormatError(
                f"expected {expected_fields} fields ({self.expected_features} features + class), "
                f"got {len(fields)}",
                line_number,
            )
        try:
            values = np.array([float(v) for v in fields[:-1]])
        except (TypeError, ValueError) as e:
            raise DataFormatError(f"non-numeric feature value: {e}", line_number)
        if not np.all(np.isfinite(values)):
            raise DataFormatError("non-finite feature value", line_number)
        return values, self.class_index(fields[-1], line_number)

    def class_index(self, token: Any, line_number: Optional[int] = None) -> int:
        text = str(token).strip()
        if text in self.token_map:
            return self.token_map[text]
        try:
            number = float(text)
        except ValueError:
            raise UnknownClassError(f"unknown class token {text!r}", line_number)
        if math.isfinite(number) and number.is_integer() and 0 <= int(number) < self.num_classes:
            return int(number)
        raise UnknownClassError(f"unknown class token {text!r}", line_number)

    def get_parser_info(self) -> Dict[str, str]:
        return {
            "parser_type": "SpectrumParser",
            "supported_formats": "Rows of feature values followed by a class token",
            "description": "Parses spectrum rows into one-hot labelled datasets",
            "task": str(self.task),
            "expected_features": str(self.expected_features),
        }
