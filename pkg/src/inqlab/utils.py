import logging
import sys
from typing import TextIO

import pydantic
from fastapi import HTTPException
from loguru import logger

from inqlab.modules.parser import FormulaParseError
from inqlab.modules.structures import CapExceededError

def setup_loguru(level="INFO", sink: TextIO = sys.stdout):
    class PropagateHandler(logging.Handler):
        def emit(self, record: logging.LogRecord) -> None:
            record.extra = []
            logging.getLogger(record.name).handle(record)

    logger.remove()
    logger.add(sink=sink, level=level)
    logger.add(PropagateHandler(), level=level, format="{message}")

def http_error(error: Exception) -> HTTPException:
    """
    Map a domain error onto the HTTP status the routers report.

    Args:
        error: Exception raised while parsing or evaluating

    Returns:
        HTTPException: 400 for parse, schema and precondition errors, 422 when a cap
        is exceeded, 500 otherwise
    """
    if isinstance(error, FormulaParseError):
        return HTTPException(status_code=400, detail=f"Formula error at {error}")
    if isinstance(error, CapExceededError):
        return HTTPException(status_code=422, detail=str(error))
    if isinstance(error, pydantic.ValidationError | ValueError):
        return HTTPException(status_code=400, detail=str(error))
    logger.exception(error)
    return HTTPException(status_code=500, detail=str(error))
