import csv
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..utils.errors import EmptyDatasetError
from .base_extractor import BaseExtractor


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


class CsvExtractor(BaseExtractor):
    """
    Extractor for spectrum CSV files: one row per sample, feature values
    followed by a class token.

    Expected config format:
    {
        "path": "data/dronerf_1135.csv",
        "header": "auto",      # "auto", true or false
        "delimiter": ","
    }

    Fields are split with the csv module line by line so every record keeps
    its physical line number and its exact field count; malformed rows are
    reported by the parser, not padded.
    """

    def __init__(self, config: Dict[str, Any] = None):
        super().__init__(config)
        self.path: Optional[Path] = Path(self.config['path']) if self.config.get('path') else None
        self.delimiter = self.config.get('delimiter', ',')
        self.header = self.config.get('header', 'auto')
        self.header_fields: Optional[List[str]] = None

    def connect(self) -> bool:
        if self.path is None:
            raise ValueError("CSV path is required in config")
        if not self.path.is_file():
            raise FileNotFoundError(f"Spectrum file not found: {self.path}")
        self.connection = open(self.path, 'r', encoding='utf-8', newline='')
        self.logger.info(f"Opened {self.path}")
        return True

    def extract(self) -> List[Dict[str, Any]]:
        """
        Read every non-blank row.

        Returns: Records {"line_number", "fields"}; line numbers are 1-based
        physical lines of the file
        """
        if self.connection is None:
            raise RuntimeError("Not connected. Call connect() first.")

        records = []
        first_row = True
        for line_number, line in enumerate(self.connection, start=1):
            if not line.strip():
                continue
            fields = next(csv.reader([line], delimiter=self.delimiter))
            fields = [f.strip() for f in fields]
            if first_row:
                first_row = False
                if self._is_header(fields):
                    self.header_fields = fields
                    self.logger.debug(f"Skipping header row at line {line_number}")
                    continue
            records.append({"line_number": line_number, "fields": fields})

        if not records:
            raise EmptyDatasetError(f"No data rows in {self.path}")

        self.logger.info(f"Extracted {len(records)} rows from {self.path}")
        return records

    def _is_header(self, fields: List[str]) -> bool:
        if self.header in (True, 'true', 'yes'):
            return True
        if self.header in (False, 'false', 'no'):
            return False
        # auto: a header has a non-numeric value among its feature columns
        return not all(_is_number(f) for f in fields[:-1])

    def disconnect(self) -> bool:
        if self.connection is not None:
            self.connection.close()
            self.connection = None
        return True

    def get_extractor_info(self) -> Dict[str, str]:
        return {
            "extractor_type": "CsvExtractor",
            "description": "Reads spectrum rows (features + class token) from a CSV file",
            "path": str(self.path),
            "header": str(self.header),
        }
