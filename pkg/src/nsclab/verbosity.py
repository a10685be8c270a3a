"""Verbosity levels and the logging they imply."""
import logging

SILENT = "silent"
VERBOSE = "verbose"
NORMAL = "normal"

VERBOSITIES = [NORMAL, SILENT, VERBOSE]
DEFAULT_VERBOSITY = NORMAL

__LOGGING_LEVELS = {
    SILENT: logging.WARNING,
    NORMAL: logging.INFO,
    VERBOSE: logging.DEBUG,
}
__LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s: %(message)s"


def is_silent(verbosity: str) -> bool:
    """Silent runs print only the outputs directory and the manifest hash."""
    return verbosity == SILENT


def logging_level(verbosity: str) -> int:
    """Logging level matching a verbosity value."""
    return __LOGGING_LEVELS.get(verbosity, logging.INFO)


def configure_logging(verbosity: str) -> None:
    """
    Route nsclab loggers to the current stderr at the level implied by verbosity.

    Progress goes to INFO, per-step diagnostics to DEBUG, recoverable numerical
    trouble to WARNING.

    :param verbosity: String. verbosity value
    """
    logger = logging.getLogger("nsclab")
    logger.setLevel(logging_level(verbosity))
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(__LOG_FORMAT))
    logger.addHandler(handler)
