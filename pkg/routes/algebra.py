# routes/algebra.py
from typing import Any, Dict

from fastapi import APIRouter

from pydantic_schemas.requests import ExpandRequest, ExpressionRequest
from utils.http import run_report

router = APIRouter()


@router.post("/normalize")
def normalize(request: ExpressionRequest) -> Dict[str, Any]:
    """
    Normal form of a Weyl-algebra expression.

    Example request:
    {
        "expr": "d*X",
        "config": {"lambda": "1"}
    }
    """
    return run_report(request.config, lambda service: service.normalize(request.expr, request.exact))


@router.post("/reduce")
def reduce(request: ExpressionRequest) -> Dict[str, Any]:
    """Class of the expression modulo the left ideal generated by d, with its residue."""
    return run_report(request.config, lambda service: service.reduce(request.expr, request.exact))


@router.post("/expand")
def expand(request: ExpandRequest) -> Dict[str, Any]:
    """
    Series of the class in the basis X^k·p of the configured model, evaluated at ``at``.

    Example request:
    {
        "expr": "1 + X^2",
        "p": "exp(2*pi*1i*t)",
        "at": [0, 1.5],
        "config": {"model": "delta"}
    }
    """
    return run_report(request.config, lambda service: service.expand(request.expr, request.p, request.at))
