from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator


class CharlierMethod(str, Enum):
    symbolic = "symbolic"
    sum = "sum"
    rodrigues = "rodrigues"
    conjugated = "conjugated"
    recurrence = "recurrence"


class CharlierResult(BaseModel):
    """C_n(x; a) as coefficients on the falling factorials and on the monomials."""

    n: int = Field(ge=0)
    a: complex
    falling: List[complex]
    monomial: List[complex]
    method: CharlierMethod = CharlierMethod.symbolic

    @model_validator(mode="after")
    def _check(self):
        if self.a == 0:
            raise ValueError("the Charlier parameter a must be nonzero")
        if len(self.falling) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} falling-factorial coefficients, got {len(self.falling)}")
        return self


class MethodAgreement(BaseModel):
    n: int
    a: complex
    x: complex
    values: Dict[CharlierMethod, complex]
    max_relative_deviation: float


class OrthogonalityCheck(BaseModel):
    m: int
    n: int
    a: complex
    value: complex
    expected: complex
    terms: int
    deviation: float
    note: Optional[str] = None

