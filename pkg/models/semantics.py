from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from models.function import AnalyticFunction, Domain
from models.weyl import AlgebraParams

PERIODICITY_TOLERANCE = 1e-10


class ModelKind(str, Enum):
    classical = "classical"
    forward_difference = "delta"
    jackson_a = "qa"
    jackson_b = "qb"

    @property
    def is_jackson(self) -> bool:
        return self in (ModelKind.jackson_a, ModelKind.jackson_b)


class BasisTag(str, Enum):
    monomial = "monomial"
    falling_factorial = "falling-factorial"
    q_pochhammer = "q-pochhammer"
    q_monomial = "q-monomial"


BASIS_OF_KIND = {
    ModelKind.classical: BasisTag.monomial,
    ModelKind.forward_difference: BasisTag.falling_factorial,
    ModelKind.jackson_a: BasisTag.q_pochhammer,
    ModelKind.jackson_b: BasisTag.q_monomial,
}


def periodicity_grid() -> np.ndarray:
    re = np.linspace(-2.0, 2.0, 9)
    im = np.linspace(-0.5, 0.5, 5)
    return (re[:, None] + 1j * im[None, :]).ravel()


def _default_generator() -> AnalyticFunction:
    return AnalyticFunction.constant(1)


class ModelSemantics(BaseModel):
    """
    One of the four interpretations of X, X^-1 and ∂ as operators on functions,
    together with the generator p that the algebra acts on.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: ModelKind
    q: Optional[complex] = None
    generator: AnalyticFunction = Field(default_factory=_default_generator)

    @field_validator("q", mode="before")
    @classmethod
    def _coerce_q(cls, value):
        if value is None or isinstance(value, complex):
            return value
        return complex(value)

    @model_validator(mode="after")
    def _check(self):
        if self.kind.is_jackson:
            if self.q is None:
                raise ValueError(f"model {self.kind.value} requires q")
            if self.q == 0 or abs(abs(self.q) - 1.0) < 1e-15:
                raise ValueError("Jackson models require q != 0 and |q| != 1")
        if self.kind == ModelKind.forward_difference and not self.generator.is_constant():
            grid = periodicity_grid()
            values = self.generator(grid)
            shifted = self.generator(grid + 1.0)
            scale = np.maximum(1.0, np.abs(values))
            if np.max(np.abs(shifted - values) / scale) > PERIODICITY_TOLERANCE:
                raise ValueError("the generator p must satisfy p(t+1) = p(t) for the delta model")
        return self

    @property
    def lam(self) -> complex:
        """λ of the algebra this semantics represents: 1, or q for the Jackson kinds."""
        return self.q if self.kind.is_jackson else 1

    def algebra(self) -> AlgebraParams:
        return AlgebraParams(lam=self.lam)

    @property
    def basis(self) -> BasisTag:
        return BASIS_OF_KIND[self.kind]

    @property
    def function_domain(self) -> Domain:
        return Domain.punctured if self.kind.is_jackson else Domain.plane

    def describe(self) -> dict:
        return {
            "model": self.kind.value,
            "q": self.q,
            "p": str(self.generator),
        }
