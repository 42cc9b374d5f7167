# services/charlier_service.py
"""
Charlier polynomials C_n(x; a) by independent routes:

    symbolic     (1 - X/a)^n in the Weyl algebra, read on the falling factorials
    sum          Σ_k C(n,k) (-a)^-k x(x-1)...(x-k+1)
    rodrigues    (x!/a^x) ∇^n (a^x/x!), with 1/Γ = 0 at the poles
    conjugated   ((x!/a^x) ∇ (a^x/x!))^n applied to 1
    recurrence   a C_{n+1} = (a + n - x) C_n - n C_{n-1}
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Number
from typing import Dict, List, Sequence

import numpy as np
from scipy import special

from models.semantics import ModelKind, ModelSemantics
from models.weyl import AlgebraParams, WeylElement
from pydantic_schemas.charlier import CharlierMethod, CharlierResult, MethodAgreement, OrthogonalityCheck
from services.coefficient_service import synthesize
from services.normal_ordering import power
from utils.errors import DomainError
from utils.qnumbers import binomial_table

logger = logging.getLogger(__name__)

ORTHOGONALITY_TAIL = 1e-12
ORTHOGONALITY_MAX_TERMS = 10_000


def _check_parameter(a: Number) -> None:
    if a == 0:
        raise DomainError("the Charlier parameter a must be nonzero")


def _check_degree(n: int) -> None:
    if n < 0:
        raise DomainError(f"the Charlier degree must be nonnegative, got {n}")


def _reciprocal(a: Number) -> Number:
    if isinstance(a, (int, Fraction)):
        return Fraction(1) / a
    return 1 / a


@lru_cache(maxsize=None)
def stirling_first_signed(n: int) -> tuple:
    """Row n of s(n, j), so that x(x-1)...(x-n+1) = Σ_j s(n, j) x^j."""
    row = [1]
    for k in range(n):
        # multiply by (x - k)
        shifted = [0] + row
        scaled = [-k * c for c in row] + [0]
        row = [u + v for u, v in zip(shifted, scaled)]
    return tuple(row)


def falling_to_monomial(coeffs: Sequence[Number]) -> List[Number]:
    """Coefficients on x^j of Σ_k c_k x(x-1)...(x-k+1)."""
    result: List[Number] = [0] * len(coeffs)
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        for j, s in enumerate(stirling_first_signed(k)):
            if s:
                result[j] = result[j] + c * s
    return result


def charlier_symbolic(n: int, a: Number) -> CharlierResult:
    """Normal form of (1 - X/a)^n at λ = 1; the X^k coefficient is the falling-factorial one."""
    _check_degree(n)
    _check_parameter(a)
    ctx = AlgebraParams()
    base = WeylElement.one() - WeylElement.X().scale(_reciprocal(a))
    element = power(ctx, base, n)
    falling = [complex(element.coefficient(k)) for k in range(n + 1)]
    return CharlierResult(
        n=n,
        a=complex(a),
        falling=falling,
        monomial=falling_to_monomial(falling),
        method=CharlierMethod.symbolic,
    )


def charlier_sum(n: int, a: Number, x: Number) -> complex:
    _check_degree(n)
    _check_parameter(a)
    row = binomial_table(n)
    total = 0j
    falling = 1 + 0j
    for k in range(n + 1):
        if k:
            falling *= x - (k - 1)
        total += row[k] * (-a) ** (-k) * falling
    return complex(total)


def _rodrigues_weight(a: Number, y: int) -> complex:
    """a^y / y!; rgamma vanishes at the poles, so negative integers y give 0."""
    return complex(a) ** y * float(special.rgamma(y + 1))


def _check_lattice_point(x: Number) -> int:
    if isinstance(x, complex):
        if x.imag != 0:
            raise DomainError(f"the Rodrigues routes need a nonnegative integer x, got {x}")
        x = x.real
    if x < 0 or float(x) != int(x):
        raise DomainError(f"the Rodrigues routes need a nonnegative integer x, got {x}")
    return int(x)


def charlier_rodrigues_oracle(n: int, a: Number, x: Number) -> complex:
    """(x!/a^x) Σ_j (-1)^j C(n,j) a^(x-j)/(x-j)!."""
    _check_degree(n)
    _check_parameter(a)
    x = _check_lattice_point(x)
    row = binomial_table(n)
    total = sum(((-1) ** j * row[j] * _rodrigues_weight(a, x - j) for j in range(n + 1)), 0j)
    return complex(total / _rodrigues_weight(a, x))


def charlier_conjugated(n: int, a: Number, x: Number) -> complex:
    """n applications of g ↦ (w(y) g(y) - w(y-1) g(y-1)) / w(y), w(y) = a^y/y!, starting from g = 1."""
    _check_degree(n)
    _check_parameter(a)
    x = _check_lattice_point(x)
    weights = np.array([_rodrigues_weight(a, y) for y in range(x + 1)])
    g = np.ones(x + 1, dtype=complex)
    for _ in range(n):
        weighted = weights * g
        previous = np.concatenate(([0j], weighted[:-1]))
        g = (weighted - previous) / weights
    return complex(g[x])


def charlier_recurrence(n: int, a: Number, x: Number) -> complex:
    _check_degree(n)
    _check_parameter(a)
    previous, current = 0j, 1 + 0j
    for m in range(n):
        previous, current = current, ((a + m - x) * current - m * previous) / a
    return complex(current)


def charlier_symbolic_value(result: CharlierResult, x: Number) -> complex:
    """The symbolic coefficients synthesized on the falling factorials."""
    return synthesize(ModelSemantics(kind=ModelKind.forward_difference), result.falling)(x)


def _is_lattice_point(x: Number) -> bool:
    value = complex(x)
    return value.imag == 0 and value.real >= 0 and value.real == int(value.real)


def compare_methods(n: int, a: Number, x: Number) -> MethodAgreement:
    """Every applicable route at one point, with the largest relative deviation from the sum."""
    result = charlier_symbolic(n, a)
    values: Dict[CharlierMethod, complex] = {
        CharlierMethod.symbolic: charlier_symbolic_value(result, x),
        CharlierMethod.sum: charlier_sum(n, a, x),
        CharlierMethod.recurrence: charlier_recurrence(n, a, x),
    }
    if _is_lattice_point(x):
        values[CharlierMethod.rodrigues] = charlier_rodrigues_oracle(n, a, x)
        values[CharlierMethod.conjugated] = charlier_conjugated(n, a, x)
    reference = values[CharlierMethod.sum]
    scale = max(1.0, abs(reference))
    deviation = max(abs(v - reference) for v in values.values()) / scale
    if deviation > 1e-9:
        logger.warning(f"Charlier routes disagree at n = {n}, a = {a}, x = {x}: {deviation:.3g}")
    return MethodAgreement(n=n, a=complex(a), x=complex(x), values=values, max_relative_deviation=deviation)


def charlier_orthogonality(m: int, n: int, a: Number) -> OrthogonalityCheck:
    """
    Σ_x C_m(x) C_n(x) a^x / x! against δ_mn n! a^-n e^a, summed until the terms
    have decayed below 1e-12 past the peak of a^x/x!.
    """
    _check_degree(m)
    _check_degree(n)
    _check_parameter(a)
    total = 0j
    x = 0
    start = int(abs(a)) + max(m, n) + 1
    while x < ORTHOGONALITY_MAX_TERMS:
        term = charlier_sum(m, a, x) * charlier_sum(n, a, x) * _rodrigues_weight(a, x)
        total += term
        x += 1
        if x > start and abs(term) < ORTHOGONALITY_TAIL:
            break
    note = None if x < ORTHOGONALITY_MAX_TERMS else f"stopped after {ORTHOGONALITY_MAX_TERMS} terms"
    expected = complex(math.factorial(n) * complex(a) ** (-n) * np.exp(complex(a))) if m == n else 0j
    return OrthogonalityCheck(
        m=m,
        n=n,
        a=complex(a),
        value=total,
        expected=expected,
        terms=x,
        deviation=abs(total - expected),
        note=note,
    )
