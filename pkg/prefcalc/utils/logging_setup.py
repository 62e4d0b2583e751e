"""
Colored console logging for the command line front end
"""

import logging
import sys
from typing import Optional

from colorlog import ColoredFormatter

from prefcalc.utils.config import config

_HANDLER_NAME = "prefcalc-console"


def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """
    Configure logging with colored output on stderr

    Args:
        level: Log level name; defaults to the configured PREFCALC_LOG_LEVEL

    Returns:
        The package logger
    """
    formatter = ColoredFormatter(
        "%(log_color)s%(levelname)-8s%(reset)s %(message)s",
        log_colors={
            'DEBUG': 'cyan',
            'INFO': 'green',
            'WARNING': 'yellow',
            'ERROR': 'red',
            'CRITICAL': 'red,bg_white',
        }
    )

    logger = logging.getLogger("prefcalc")

    # Repeated calls (tests, nested CLI runs) must not stack handlers
    for existing in list(logger.handlers):
        if existing.get_name() == _HANDLER_NAME:
            logger.removeHandler(existing)

    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(formatter)
    logger.addHandler(handler)

    level_name = (level or config.log_level).upper()
    logger.setLevel(getattr(logging, level_name, logging.WARNING))

    return logger
