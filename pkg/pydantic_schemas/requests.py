from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from pydantic_schemas.run_config import ExtractMethod


class RunRequest(BaseModel):
    """Request body base; ``config`` takes the RunConfig fields, e.g. {"model": "delta", "K": 4}."""

    config: Dict[str, Any] = Field(default_factory=dict)


class ExpressionRequest(RunRequest):
    expr: str = Field(..., min_length=1)
    exact: bool = False


class ExpandRequest(RunRequest):
    expr: str = Field(..., min_length=1)
    p: Optional[str] = None
    at: List[complex] = Field(default_factory=list)


class ExtractRequest(RunRequest):
    f: str = Field(..., min_length=1)
    p: Optional[str] = None
    method: ExtractMethod = ExtractMethod.oracle


class ResidueRequest(RunRequest):
    g: str = Field(..., min_length=1)


class VerdictRequest(RunRequest):
    f: str = Field(..., min_length=1)
    p: Optional[str] = None


class CharlierRequest(RunRequest):
    n: int = Field(..., ge=0)
    a: complex
    x: List[complex] = Field(default_factory=list)
