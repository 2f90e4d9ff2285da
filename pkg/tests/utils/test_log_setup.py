"""
Tests for the logging setup.
"""
import io
import logging

import pytest

from utils.log_setup import setup_logging, verbosity_level


@pytest.fixture(autouse=True)
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.mark.parametrize("verbosity, level", [
    (-1, logging.ERROR), (0, logging.WARNING), (1, logging.INFO), (2, logging.DEBUG), (5, logging.DEBUG),
])
def test_verbosity_level(verbosity, level):
    """Test the mapping of -q / -v counts to levels."""
    assert verbosity_level(verbosity) == level


def test_setup_logging_filters_and_formats():
    """Test that records below the level are dropped and the rest carry level and logger name."""
    stream = io.StringIO()
    setup_logging(1, stream)
    logger = logging.getLogger("core.refine")
    logger.debug("hidden")
    logger.info("refined")
    output = stream.getvalue()
    assert "hidden" not in output
    assert "info" in output
    assert "core.refine: refined" in output


def test_setup_logging_replaces_handlers():
    """Test that repeated setup keeps a single handler."""
    setup_logging(0, io.StringIO())
    setup_logging(0, io.StringIO())
    assert len(logging.getLogger().handlers) == 1
