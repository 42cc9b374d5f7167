import math
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.semantics import BasisTag, ModelKind


class CoefficientMethod(str, Enum):
    oracle = "oracle"
    residue = "residue"


class CoefficientRecord(BaseModel):
    k: int
    re: float
    im: float
    err: float
    method: CoefficientMethod


class CoefficientSeries(BaseModel):
    """a_0..a_K in the basis of one semantics, with nonnegative error estimates."""

    model_config = ConfigDict(frozen=True)

    values: List[complex]
    errors: List[float]
    kind: ModelKind
    basis: BasisTag
    method: CoefficientMethod
    warnings: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check(self):
        if len(self.values) != len(self.errors):
            raise ValueError("values and errors must have the same length")
        for value in self.values:
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise ValueError("coefficients must be finite")
        for error in self.errors:
            if not error >= 0:
                raise ValueError("error estimates must be nonnegative")
        return self

    @property
    def K(self) -> int:
        return len(self.values) - 1

    def records(self) -> List[CoefficientRecord]:
        return [
            CoefficientRecord(k=k, re=value.real, im=value.imag, err=error, method=self.method)
            for k, (value, error) in enumerate(zip(self.values, self.errors))
        ]


class QuadratureResult(BaseModel):
    """A numeric contour integral with its error indicator and any flags raised."""

    value: complex
    error: float = 0.0
    tail: float = 0.0
    flagged: bool = False
    warnings: List[str] = Field(default_factory=list)


class ExactnessProbe(BaseModel):
    g: str
    measured: complex
    predicted: complex = 0j
    discrepancy: float


class BoundCheck(BaseModel):
    k: int
    x_n: float
    measured: float
    bound: float
    holds: bool


class ResidueComparison(BaseModel):
    k: int
    oracle: complex
    residue: Optional[complex] = None
    deviation: Optional[float] = None
