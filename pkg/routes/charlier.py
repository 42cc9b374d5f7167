# routes/charlier.py
from typing import Any, Dict

from fastapi import APIRouter

from pydantic_schemas.requests import CharlierRequest
from utils.http import run_report

router = APIRouter()


@router.post("/evaluate")
def evaluate(request: CharlierRequest) -> Dict[str, Any]:
    """
    C_n(x; a) coefficients and every evaluation route at the points x.

    Example request:
    {
        "n": 2,
        "a": 2,
        "x": [3]
    }
    """
    a = request.a.real if request.a.imag == 0 else request.a
    return run_report(request.config, lambda service: service.charlier(request.n, a, request.x))
