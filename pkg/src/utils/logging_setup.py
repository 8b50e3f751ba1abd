import logging
from typing import Optional

import colorlog


LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
COLOR_FORMAT = '%(log_color)s%(asctime)s - %(name)s - %(levelname)s%(reset)s - %(message)s'


def setup_logging(level: str = 'INFO', log_file: Optional[str] = None) -> logging.Logger:
    """
    Configure root logging with a colored console handler.

    Args:
        level: Logging level name (DEBUG, INFO, WARNING, ...)
        log_file: Optional path of a plain-text log file

    Returns:
        The pipeline logger
    """
    numeric_level = getattr(logging, str(level).upper(), logging.INFO)

    console = colorlog.StreamHandler()
    console.setFormatter(colorlog.ColoredFormatter(
        COLOR_FORMAT,
        log_colors={
            'DEBUG': 'cyan',
            'INFO': 'green',
            'WARNING': 'yellow',
            'ERROR': 'red',
            'CRITICAL': 'bold_red',
        }
    ))
    handlers = [console]

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handlers.append(file_handler)

    logging.basicConfig(level=numeric_level, handlers=handlers, force=True)

    logger = logging.getLogger('AugmentationPipeline')
    logger.debug("Logging initialized at level %s", logging.getLevelName(numeric_level))
    return logger
