from __future__ import absolute_import, unicode_literals
import logging
import sys
from typing import TextIO

PACKAGE_LOGGER = "optical_fuse_sim"


def setup_logger(name: str, stream: TextIO = sys.stdout) -> logging.Logger:
    """Configure a logger with console output."""
    logger = logging.getLogger(name)

    if not logger.handlers:
        logger.setLevel(logging.INFO)

        # Console handler
        console = logging.StreamHandler(stream)
        console.setLevel(logging.DEBUG)
        formatter = logging.Formatter('%(message)s')
        console.setFormatter(formatter)
        logger.addHandler(console)

        # Prevent propagation to root logger
        logger.propagate = False

    return logger


def set_verbosity(level: str) -> None:
    """Apply a level to every logger created under the package namespace."""
    for name, logger in logging.Logger.manager.loggerDict.items():
        if name.startswith(PACKAGE_LOGGER) and isinstance(logger, logging.Logger):
            logger.setLevel(level)
