# routes/liouville.py
from typing import Any, Dict

from fastapi import APIRouter

from pydantic_schemas.requests import VerdictRequest
from utils.http import run_report

router = APIRouter()


@router.post("/verdict")
def verdict(request: VerdictRequest) -> Dict[str, Any]:
    """
    Verdict report for the Liouville-type statement of the configured model.

    A hypothesis-violated verdict is still a 200 response; the verdict field carries it.
    """
    return run_report(request.config, lambda service: service.liouville(request.f, request.p))
