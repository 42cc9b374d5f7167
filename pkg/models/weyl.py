from enum import Enum
from numbers import Number
from types import MappingProxyType
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from utils.errors import DomainError

Exponents = Tuple[int, int]


class AlgebraParams(BaseModel):
    """The deformation parameter λ of the relation ∂X - λX∂ = 1 (λ = 1: Weyl, λ = q: q-Weyl)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, populate_by_name=True)

    lam: Any = Field(default=1, alias="lambda")

    @field_validator("lam")
    @classmethod
    def _nonzero(cls, value):
        if not isinstance(value, Number):
            raise ValueError(f"lambda must be a number, got {type(value).__name__}")
        if value == 0:
            raise ValueError("lambda must be nonzero")
        return value

    @property
    def is_classical(self) -> bool:
        return self.lam == 1


def _purged(items: Mapping) -> Dict:
    return {key: value for key, value in items.items() if value != 0}


class WeylElement:
    """
    Finite sum Σ c_{m,n} X^m ∂^n in normal order (X-powers left of ∂-powers).

    Keys are (m, n) with m any integer and n >= 0. Zero coefficients are never
    stored, so two elements are equal exactly when their term maps are equal.
    Instances are immutable; the product lives in services.normal_ordering
    because it depends on λ.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Exponents, Number]] = None):
        clean: Dict[Exponents, Number] = {}
        for (m, n), coefficient in (terms or {}).items():
            if n < 0:
                raise DomainError(f"negative ∂-exponent {n} is not allowed")
            if coefficient != 0:
                clean[(int(m), int(n))] = coefficient
        object.__setattr__(self, "_terms", MappingProxyType(clean))

    def __setattr__(self, name, value):
        raise AttributeError("WeylElement is immutable")

    # constructors

    @classmethod
    def zero(cls) -> "WeylElement":
        return cls()

    @classmethod
    def constant(cls, value: Number) -> "WeylElement":
        return cls({(0, 0): value})

    @classmethod
    def one(cls) -> "WeylElement":
        return cls.constant(1)

    @classmethod
    def monomial(cls, m: int, n: int = 0, coefficient: Number = 1) -> "WeylElement":
        return cls({(m, n): coefficient})

    @classmethod
    def X(cls) -> "WeylElement":
        return cls.monomial(1, 0)

    @classmethod
    def Xinv(cls) -> "WeylElement":
        return cls.monomial(-1, 0)

    @classmethod
    def d(cls) -> "WeylElement":
        return cls.monomial(0, 1)

    # accessors

    @property
    def terms(self) -> Mapping[Exponents, Number]:
        return self._terms

    def coefficient(self, m: int, n: int = 0) -> Number:
        return self._terms.get((m, n), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(key == (0, 0) for key in self._terms)

    def is_polynomial_in_X(self) -> bool:
        return all(m >= 0 for m, _ in self._terms)

    def total_degree(self) -> int:
        return max((abs(m) + n for m, n in self._terms), default=0)

    def sorted_terms(self) -> List[Tuple[Exponents, Number]]:
        """Terms by descending ∂-exponent, then ascending X-exponent."""
        return sorted(self._terms.items(), key=lambda item: (-item[0][1], item[0][0]))

    def __iter__(self) -> Iterator[Tuple[Exponents, Number]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self._terms)

    # additive structure (λ-independent)

    def __add__(self, other: "WeylElement") -> "WeylElement":
        if isinstance(other, Number):
            other = WeylElement.constant(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        combined: Dict[Exponents, Number] = dict(self._terms)
        for key, coefficient in other._terms.items():
            combined[key] = combined.get(key, 0) + coefficient
        return WeylElement(_purged(combined))

    __radd__ = __add__

    def __neg__(self) -> "WeylElement":
        return WeylElement({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        if isinstance(other, Number):
            other = WeylElement.constant(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> "WeylElement":
        return WeylElement.constant(other) - self

    def scale(self, factor: Number) -> "WeylElement":
        return WeylElement({key: factor * c for key, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Number):
            other = WeylElement.constant(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def max_deviation(self, other: "WeylElement") -> float:
        """Largest coefficient-wise absolute difference; used by floating-point tests."""
        keys = set(self._terms) | set(other._terms)
        return max((abs(self.coefficient(*k) - other.coefficient(*k)) for k in keys), default=0.0)

    def __repr__(self) -> str:
        from utils.formatting import format_weyl

        return f"WeylElement({format_weyl(self)!r})"


class LaurentPoly:
    """A class Σ c_m X^m in the quotient A₀/A₀∂; zero coefficients are never stored."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, Number]] = None):
        clean = {int(m): c for m, c in (coeffs or {}).items() if c != 0}
        object.__setattr__(self, "_coeffs", MappingProxyType(clean))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @property
    def coeffs(self) -> Mapping[int, Number]:
        return self._coeffs

    def coefficient(self, m: int) -> Number:
        return self._coeffs.get(m, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def exponents(self) -> List[int]:
        return sorted(self._coeffs)

    def to_element(self) -> WeylElement:
        """The representative Σ c_m X^m of this class."""
        return WeylElement({(m, 0): c for m, c in self._coeffs.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        combined = dict(self._coeffs)
        for m, c in other._coeffs.items():
            combined[m] = combined.get(m, 0) + c
        return LaurentPoly(combined)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return dict(self._coeffs) == dict(other._coeffs)

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        from utils.formatting import format_weyl

        return f"LaurentPoly({format_weyl(self.to_element())!r})"


class SeriesFamily(str, Enum):
    difference = "difference-F"
    q_small = "q-small-F"
    q_large = "q-large-F"
    classical = "classical-F"


class FormalSeriesF(BaseModel):
    """Truncated coefficients a_0..a_K of an element of F, tagged with its defining family."""

    model_config = ConfigDict(frozen=True)

    coeffs: List[complex]
    family: SeriesFamily
    # only read by the q-large-F functional, whose threshold is |q^-1|
    q: Optional[complex] = None

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    @model_validator(mode="after")
    def _check(self):
        if not self.coeffs:
            raise ValueError("at least one coefficient is required (K >= 0)")
        for value in self.coeffs:
            if value != value or abs(value) == float("inf"):
                raise ValueError("coefficients must be finite")
        if self.family == SeriesFamily.q_large and self.q is not None and abs(self.q) <= 1:
            raise ValueError("q-large-F requires |q| > 1")
        return self
