import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List


class BaseLoader(ABC):
    """
    Base class for all output loaders.

    Each loader writes pipeline results (score reports, generated grids) into
    an output directory.
    """

    def __init__(self, config: Dict[str, Any] = None):
        """
        Initialize the loader with optional configuration.

        Args:
            config: Dictionary with loader-specific settings
        """
        self.config = config or {}
        self.connection = None
        self.logger = logging.getLogger(self.__class__.__name__)

    def connect(self) -> bool:
        """
        Create the output directory and check that it is writable.

        Returns:
            True if the directory is ready
        """
        out_dir = Path(self.config.get('dir', 'results'))
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            marker = out_dir / '.write_check'
            marker.touch()
            marker.unlink()
        except OSError as e:
            raise OSError(f"Output directory {out_dir} is not writable: {e}") from e
        self.connection = out_dir
        return True

    @abstractmethod
    def load(self, data: Any) -> Dict[str, Any]:
        """
        Write data to the output directory.

        Returns:
            Dictionary with load results
        """
        pass

    def disconnect(self) -> bool:
        self.connection = None
        return True

    @property
    def out_dir(self) -> Path:
        if self.connection is None:
            raise RuntimeError("Not connected. Call connect() first.")
        return self.connection

    def get_loader_info(self) -> Dict[str, str]:
        return {
            "loader_type": self.__class__.__name__,
            "description": "Override in subclass",
            "target_destination": str(self.config.get('dir', 'results'))
        }

    def _create_load_result(self, success: bool, files: List[Path],
                            errors: List[str] = None) -> Dict[str, Any]:
        return {
            "success": success,
            "files_written": [str(f) for f in files],
            "errors": errors or [],
        }

    def __enter__(self):
        """Context manager entry - prepare the output directory."""
        self.connect()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Context manager exit."""
        self.disconnect()
