# routes/coefficients.py
from typing import Any, Dict

from fastapi import APIRouter

from pydantic_schemas.requests import ExtractRequest, ResidueRequest
from utils.http import run_report

router = APIRouter()


@router.post("/extract")
def extract(request: ExtractRequest) -> Dict[str, Any]:
    """
    Coefficients a_0..a_K of f, by oracle, residue or both.

    Example request:
    {
        "f": "pow(2,t)",
        "method": "oracle",
        "config": {"model": "delta", "K": 4}
    }
    """
    return run_report(request.config, lambda service: service.extract(request.f, request.p, request.method))


@router.post("/residue")
def residue(request: ResidueRequest) -> Dict[str, Any]:
    """Numeric residue of g on the configured contour."""
    return run_report(request.config, lambda service: service.residue(request.g))
