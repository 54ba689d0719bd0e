"""
Loguru configuration for cwforest.

Only stderr and an optional rotating file receive log records; stdout is left
to the command output.
"""

import logging
import os
import sys
from typing import Optional

from loguru import logger

DEFAULT_LEVEL = os.getenv("CWFOREST_LOG_LEVEL", "WARNING")

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{module}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {module}:{function}:{line} - {message}"


class InterceptHandler(logging.Handler):
    """Forward records from the stdlib ``logging`` tree into loguru."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        # skip logging's own frames so loguru reports the real call site
        frame, depth = logging.currentframe(), 2
        while frame is not None and frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def setup_logging(log_file: Optional[str] = None, level: str = DEFAULT_LEVEL):
    """
    Route all cwforest logging to stderr, and to ``log_file`` when given.

    Args:
        log_file: Path of a rotating log file, or None for console only
        level: Minimum level name, e.g. "DEBUG" or "WARNING"

    Returns:
        The loguru logger
    """
    logger.remove()
    logger.add(sys.stderr, format=CONSOLE_FORMAT, level=level, colorize=True)

    if log_file:
        logger.add(
            log_file,
            format=FILE_FORMAT,
            level=level,
            rotation="10 MB",
            retention="5 days",
            compression="zip",
            backtrace=True,
            diagnose=False,
        )

    logging.basicConfig(handlers=[InterceptHandler()], level=0, force=True)
    return logger
