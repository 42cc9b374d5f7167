import math
from enum import Enum
from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

DEFAULT_HALF_HEIGHT = 1.5
DEFAULT_STEP = 1e-3
DEFAULT_NODES = 512


class ContourVariant(str, Enum):
    vertical_line = "VerticalLine"
    circle = "Circle"


class VerticalLine(BaseModel):
    """
    The line Re t = a, truncated symmetrically to |Im t| <= Y (principal value),
    weighted by e^(-σ cos 2πt).
    """

    model_config = ConfigDict(frozen=True)

    variant: Literal["VerticalLine"] = ContourVariant.vertical_line.value
    a: float = 0.1
    Y: float = Field(default=DEFAULT_HALF_HEIGHT, gt=0)
    h: float = Field(default=DEFAULT_STEP, gt=0)
    sigma: Literal[1, -1] = 1

    @model_validator(mode="after")
    def _decay(self):
        # |e^(-σcos(2π(a+iy)))| = e^(-σ cos(2πa) cosh(2πy))
        if self.sigma * math.cos(2 * math.pi * self.a) <= 0:
            raise ValueError(
                f"sigma*cos(2*pi*a) must be positive for the weight to decay (a = {self.a}, sigma = {self.sigma})"
            )
        return self

    @property
    def band(self) -> int:
        """Index of the band of abscissas sharing one value of the line integral."""
        shift = 0.0 if self.sigma == 1 else 0.5
        return math.floor(self.a - shift + 0.25)

    def shifted(self, a: float) -> "VerticalLine":
        return self.model_copy(update={"a": a})


class Circle(BaseModel):
    """The circle |t| = r sampled at N equispaced nodes."""

    model_config = ConfigDict(frozen=True)

    variant: Literal["Circle"] = ContourVariant.circle.value
    r: float = Field(default=2.0, gt=0)
    N: int = Field(default=DEFAULT_NODES, ge=8)


ContourSpec = Union[VerticalLine, Circle]


class Calibration(BaseModel):
    """The scalar c with a_k = c·Res(X^-(k+1) f), and where it came from."""

    model_config = ConfigDict(frozen=True)

    c: complex
    provenance: str

    @model_validator(mode="after")
    def _nonzero(self):
        if self.c == 0:
            raise ValueError("calibration constant must be nonzero")
        return self
