"""
Logging configuration for the command line.
"""
import logging
import sys

from colorama import Fore, Style

LEVEL_COLORS = {
    logging.DEBUG: Style.DIM,
    logging.INFO: Fore.CYAN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}


class ColorFormatter(logging.Formatter):
    """Prefix each record with its level name in the level's color."""

    def format(self, record):
        color = LEVEL_COLORS.get(record.levelno, "")
        message = super().format(record)
        return f"{color}{record.levelname.lower()}{Style.RESET_ALL} {message}"


def verbosity_level(verbosity):
    """
    Map a verbosity count to a logging level.

    -1 (quiet) -> ERROR, 0 -> WARNING, 1 -> INFO, 2 or more -> DEBUG
    """
    if verbosity < 0:
        return logging.ERROR
    return (logging.WARNING, logging.INFO)[verbosity] if verbosity < 2 else logging.DEBUG


def setup_logging(verbosity=0, stream=None):
    """Install a single colored stream handler on the root logger."""
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(ColorFormatter("%(name)s: %(message)s"))
    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(verbosity_level(verbosity))
    return handler
