import logging
import logging.handlers
import os
import sys
from pathlib import Path

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Create formatter
formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)


def configure_logging(level=None) -> logging.Logger:
    """
    Console handler on stderr (stdout carries the reports) plus a rotating file
    handler under WEYLSERIES_LOG_DIR; WEYLSERIES_LOG_FILE=0 turns the file off.
    """
    level = level or os.getenv("WEYLSERIES_LOG_LEVEL", "INFO")
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO

    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Remove handlers from an earlier configuration
    if root_logger.hasHandlers():
        root_logger.handlers.clear()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    console_handler.setLevel(level)
    root_logger.addHandler(console_handler)

    if os.getenv("WEYLSERIES_LOG_FILE", "1") != "0":
        log_dir = Path(os.getenv("WEYLSERIES_LOG_DIR", Path(__file__).parent / "logs"))
        log_dir.mkdir(parents=True, exist_ok=True)
        # Rotates logs when they reach 10MB, keeps 5 backup logs
        file_handler = logging.handlers.RotatingFileHandler(
            log_dir / "weylseries.log", maxBytes=10 * 1024 * 1024, backupCount=5, encoding="utf-8"
        )
        file_handler.setFormatter(formatter)
        file_handler.setLevel(level)
        root_logger.addHandler(file_handler)

    return root_logger
