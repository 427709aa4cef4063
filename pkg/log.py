import logging
import os

import coloredlogs

LOG_FORMAT = "[%(name)s] %(message)s"


def get_logger(stage: str) -> logging.Logger:
    """
    Logger for one pipeline stage; messages come out as "[stage] message".
    """
    return logging.getLogger(stage)


def setup_logging(verbose: bool = False) -> None:
    level = os.environ.get("EXPWELL_LOG_LEVEL") or ("DEBUG" if verbose else "INFO")
    coloredlogs.install(level=level, fmt=LOG_FORMAT)
