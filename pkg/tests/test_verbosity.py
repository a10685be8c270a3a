import logging

import pytest

from nsclab.verbosity import (
    NORMAL,
    SILENT,
    VERBOSE,
    configure_logging,
    is_silent,
    logging_level,
)


@pytest.mark.parametrize(
    "verbosity, level",
    [(SILENT, logging.WARNING), (NORMAL, logging.INFO), (VERBOSE, logging.DEBUG)],
)
def test_logging_level(verbosity, level):
    assert logging_level(verbosity) == level


def test_is_silent():
    assert is_silent(SILENT)
    assert not is_silent(VERBOSE)


def test_configure_logging_keeps_one_handler():
    configure_logging(VERBOSE)
    configure_logging(SILENT)

    logger = logging.getLogger("nsclab")
    assert logger.level == logging.WARNING
    assert len(logger.handlers) == 1
