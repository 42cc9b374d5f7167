import math
from enum import Enum
from numbers import Number
from typing import Any, Dict, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from models.contour import Circle, ContourSpec, VerticalLine
from models.function import AnalyticFunction
from models.semantics import ModelKind, ModelSemantics
from models.weyl import AlgebraParams


class OutputFormat(str, Enum):
    json = "json"
    text = "text"


class ExtractMethod(str, Enum):
    oracle = "oracle"
    residue = "residue"
    both = "both"


def _plain_number(value: complex) -> Number:
    """1+0j -> 1, 0.5+0j -> 0.5; keeps exact integer arithmetic in the algebra."""
    if value.imag != 0:
        return value
    if float(value.real).is_integer():
        return int(value.real)
    return value.real


class RunConfig(BaseModel):
    """Every knob of a run. Defaults < environment < --config file < flags."""

    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="forbid")

    model: ModelKind = ModelKind.classical
    q: Optional[complex] = None
    lam: Optional[complex] = Field(default=None, alias="lambda")
    a: float = 0.1
    Y: float = Field(default=1.5, gt=0)
    h: float = Field(default=1e-3, gt=0)
    sigma: Literal[1, -1] = 1
    r: float = Field(default=2.0, gt=0)
    N: int = Field(default=512, ge=8)
    K: int = Field(default=8, ge=0)
    coefficient_tolerance: float = Field(default=1e-8, gt=0)
    residual_tolerance: float = Field(default=1e-8, gt=0)
    growth_margin: float = Field(default=0.1, gt=0)
    format: OutputFormat = OutputFormat.json

    @field_validator("q", "lam", mode="before")
    @classmethod
    def _parse_constant(cls, value):
        if isinstance(value, str):
            from utils.parsing import iter_points

            points = list(iter_points(value))
            if len(points) != 1:
                raise ValueError(f"expected one constant, got {value!r}")
            return points[0]
        return value

    @field_validator("model", mode="before")
    @classmethod
    def _model_alias(cls, value):
        # "q" is accepted as shorthand for the JacksonA structure
        return ModelKind.jackson_a if value == "q" else value

    @model_validator(mode="after")
    def _check(self):
        if self.model.is_jackson:
            if self.q is None:
                raise ValueError(f"model {self.model.value} requires q")
            if self.q == 0 or abs(abs(self.q) - 1.0) < 1e-15:
                raise ValueError("Jackson models require q != 0 and |q| != 1")
            if self.model == ModelKind.jackson_a and abs(self.q) < 1 and self.r <= 1:
                raise ValueError("JacksonA extraction with |q| < 1 needs a circle of radius r > 1")
        if self.model == ModelKind.forward_difference and self.sigma * math.cos(2 * math.pi * self.a) <= 0:
            raise ValueError(f"sigma*cos(2*pi*a) must be positive (a = {self.a}, sigma = {self.sigma})")
        if self.lam is not None and self.lam == 0:
            raise ValueError("lambda must be nonzero")
        return self

    def algebra(self) -> AlgebraParams:
        if self.lam is not None:
            return AlgebraParams(lam=_plain_number(self.lam))
        if self.model.is_jackson:
            return AlgebraParams(lam=_plain_number(self.q))
        return AlgebraParams()

    def semantics(self, p: Optional[AnalyticFunction] = None) -> ModelSemantics:
        if p is None:
            return ModelSemantics(kind=self.model, q=self.q)
        return ModelSemantics(kind=self.model, q=self.q, generator=p)

    def vertical_line(self) -> VerticalLine:
        return VerticalLine(a=self.a, Y=self.Y, h=self.h, sigma=self.sigma)

    def circle(self) -> Circle:
        return Circle(r=self.r, N=self.N)

    def contour(self) -> ContourSpec:
        if self.model == ModelKind.forward_difference:
            return self.vertical_line()
        return self.circle()

    def echo(self) -> Dict[str, Any]:
        return self.model_dump(mode="python", by_alias=True)
