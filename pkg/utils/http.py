# utils/http.py
import logging
from typing import Any, Callable, Dict, Mapping

from fastapi import HTTPException, status
from pydantic import ValidationError

from pydantic_schemas.report import Report
from services.report_service import ReportService
from utils.config import load_run_config
from utils.errors import ParseError, WeylSeriesError

logger = logging.getLogger(__name__)


def run_report(config: Mapping[str, Any], action: Callable[[ReportService], Report]) -> Dict[str, Any]:
    """
    Builds the RunConfig, runs the action and returns the report payload.

    ParseError maps to 400; every other package error and invalid configuration to 422.
    """
    try:
        service = ReportService(load_run_config(config))
        return action(service).payload()
    except ParseError as e:
        logger.error(f"Parse error: {e.message}")
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=e.describe())
    except ValidationError as e:
        logger.error(f"Invalid configuration: {e}")
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail=[{"loc": list(err["loc"]), "msg": err["msg"]} for err in e.errors()],
        )
    except (WeylSeriesError, ValueError) as e:
        logger.error(f"Request failed: {str(e)}")
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
