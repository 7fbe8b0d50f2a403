# src/utils/logging_setup.py

import logging
import sys
from pathlib import Path
from typing import Optional, Union


LOG_FORMAT = '%(asctime)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s'


def setup_logging(log_dir: Optional[Union[str, Path]] = None,
                  level: Union[str, int] = logging.INFO,
                  debug_file: bool = False) -> None:
    """Setup logging with a console handler and an optional debug file handler"""
    formatter = logging.Formatter(LOG_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)

    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG if debug_file else level)
    root_logger.handlers = []  # Clear existing handlers
    root_logger.addHandler(console_handler)

    if debug_file and log_dir is not None:
        log_path = Path(log_dir)
        log_path.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path / 'learner_debug.log')
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    logging.debug("Logging system initialized")
