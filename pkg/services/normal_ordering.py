# services/normal_ordering.py
"""
Normal ordering and the quotient by the left ideal A₀∂.

Products are rewritten with the single-step rule

    ∂ X^m = λ^m X^m ∂ + [m]_λ X^(m-1)        (m any integer)

and expansions of ∂^n X^m are memoized per (λ, n, m). Only ring operations are
applied to coefficients, so Fraction inputs give exact Fraction outputs.
"""

import logging
import math
from functools import lru_cache
from numbers import Number
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel

from models.weyl import (
    AlgebraParams,
    Exponents,
    FormalSeriesF,
    LaurentPoly,
    SeriesFamily,
    WeylElement,
)
from utils.errors import DomainError
from utils.qnumbers import q_integer

logger = logging.getLogger(__name__)


@lru_cache(maxsize=4096)
def _d_power_times_x_power(lam: Number, n: int, m: int) -> Tuple[Tuple[Exponents, Number], ...]:
    """Normal form of ∂^n X^m as a tuple of ((i, j), c) pairs."""
    if n == 0:
        return (((m, 0), 1),)
    shifted = _d_power_times_x_power(lam, n - 1, m)
    lowered = _d_power_times_x_power(lam, n - 1, m - 1)
    factor = lam**m
    bracket = q_integer(m, lam)
    acc: Dict[Exponents, Number] = {}
    for (i, j), c in shifted:
        acc[(i, j + 1)] = acc.get((i, j + 1), 0) + factor * c
    if bracket != 0:
        for (i, j), c in lowered:
            acc[(i, j)] = acc.get((i, j), 0) + bracket * c
    return tuple((key, c) for key, c in acc.items() if c != 0)


def add(a: WeylElement, b: WeylElement) -> WeylElement:
    return a + b


def multiply(ctx: AlgebraParams, a: WeylElement, b: WeylElement) -> WeylElement:
    """The normal form of a·b in the algebra with parameter ctx.lam."""
    acc: Dict[Exponents, Number] = {}
    for (ma, na), ca in a.terms.items():
        for (mb, nb), cb in b.terms.items():
            product = ca * cb
            for (i, j), c in _d_power_times_x_power(ctx.lam, na, mb):
                key = (ma + i, j + nb)
                acc[key] = acc.get(key, 0) + product * c
    return WeylElement(acc)


def power(ctx: AlgebraParams, a: WeylElement, n: int) -> WeylElement:
    if n < 0:
        raise DomainError(f"power exponent must be nonnegative, got {n}")
    result = WeylElement.one()
    for _ in range(n):
        result = multiply(ctx, result, a)
    return result


def commutator_defect(ctx: AlgebraParams) -> WeylElement:
    """∂·X - λ·X·∂, which must normalize to the identity 1."""
    d, x = WeylElement.d(), WeylElement.X()
    return multiply(ctx, d, x) - multiply(ctx, x, d).scale(ctx.lam)


def reduce_mod_ideal(a: WeylElement) -> LaurentPoly:
    """Project onto A₀/A₀∂: every term with a positive ∂-exponent lies in the ideal."""
    return LaurentPoly({m: c for (m, n), c in a.terms.items() if n == 0})


def reduced_d_action(ctx: AlgebraParams, p: LaurentPoly) -> LaurentPoly:
    """Left multiplication by ∂ on classes: X^m ↦ [m]_λ X^(m-1)."""
    acc: Dict[int, Number] = {}
    for m, c in p.coeffs.items():
        bracket = q_integer(m, ctx.lam)
        if bracket != 0:
            acc[m - 1] = acc.get(m - 1, 0) + c * bracket
    return LaurentPoly(acc)


def symbolic_residue(p: LaurentPoly) -> Number:
    """Coefficient of X^-1, the generator of the one-dimensional cokernel."""
    return p.coefficient(-1)


def symbolic_coefficient(ctx: AlgebraParams, w: WeylElement, k: int) -> Number:
    """Res(X^-(k+1)·w) computed entirely inside the algebra."""
    shifted = multiply(ctx, WeylElement.monomial(-(k + 1)), w)
    return symbolic_residue(reduce_mod_ideal(shifted))


# Gelfond-type membership diagnostics


class FamilyDiagnostic(BaseModel):
    family: SeriesFamily
    indices: List[int]
    samples: List[Optional[float]]
    threshold: Optional[float] = None
    trend: str
    status: str
    note: str = ""


def _trend(values: List[float]) -> str:
    finite = [v for v in values if math.isfinite(v)]
    if len(finite) < 2:
        return "insufficient"
    diffs = [b - a for a, b in zip(finite, finite[1:])]
    if all(step < 0 for step in diffs):
        return "strictly decreasing"
    if all(step <= 0 for step in diffs):
        return "non-increasing"
    if all(step >= 0 for step in diffs):
        return "non-decreasing"
    return "mixed"


def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


def family_diagnostics(s: FormalSeriesF) -> FamilyDiagnostic:
    """
    Sample the functional that defines the declared family on the finite data.

    This is a trend report, never a membership proof: every defining condition
    is a limit. Exactly vanishing tail sums of the difference functional are
    recorded as -inf (JSON null) and count in favour of membership.
    """
    K = s.truncation
    if K < 2:
        raise DomainError(f"family diagnostics need K >= 2, got K = {K}")
    a = [complex(v) for v in s.coeffs]

    if all(v == 0 for v in a[2:]):
        return FamilyDiagnostic(
            family=s.family,
            indices=[],
            samples=[],
            trend="insufficient",
            status="tail vanishes (trivially in family)",
        )

    if s.family == SeriesFamily.difference:
        indices = list(range(2, K + 1))
        values = []
        for n in indices:
            tail = math.fsum(((-1) ** k * math.factorial(k) * a[k]).real for k in range(n, K + 1))
            tail_im = math.fsum(((-1) ** k * math.factorial(k) * a[k]).imag for k in range(n, K + 1))
            modulus = abs(complex(tail, tail_im))
            values.append(-math.inf if modulus == 0 else math.log(modulus) / math.log(n))
        upper = values[len(values) // 2 :]
        trend = _trend(values)
        if all(v <= 1e-12 for v in upper) and (trend == "strictly decreasing" or min(upper) <= -1.0):
            status = "consistent"
        elif all(v > 0 for v in upper) and trend == "non-decreasing":
            status = "inconsistent with lim = -inf"
        else:
            status = "indeterminate"
        return FamilyDiagnostic(
            family=s.family,
            indices=indices,
            samples=[_finite_or_none(v) for v in values],
            trend=trend,
            status=status,
            note="ln|Σ_{k>=n} (-1)^k k! a_k| / ln n; null marks an exactly vanishing tail",
        )

    if s.family == SeriesFamily.q_large:
        if s.q is None:
            raise DomainError("q-large-F diagnostics need q")
        indices = list(range(2, K + 1))
        values = [abs(a[n]) ** (2.0 / (n * (n - 1))) for n in indices]
        threshold = 1.0 / abs(s.q)
    else:
        indices = list(range(1, K + 1))
        values = [abs(a[n]) ** (1.0 / n) for n in indices]
        threshold = 1.0 if s.family == SeriesFamily.q_small else 0.0

    trend = _trend(values)
    last = values[-1]
    if s.family == SeriesFamily.classical:
        head = max(values[: max(1, len(values) // 2)])
        if last < 0.5 * head and trend != "non-decreasing":
            status = "consistent"
        elif last >= 0.9 * head:
            status = "inconsistent with lim = 0"
        else:
            status = "indeterminate"
    else:
        upper = values[len(values) // 2 :]
        if max(upper) < threshold:
            status = "consistent"
        elif min(upper) >= threshold:
            status = f"inconsistent with limsup < {threshold:.6g}"
        else:
            status = "indeterminate"
    logger.info(f"Family diagnostic for {s.family.value}: {status}")
    return FamilyDiagnostic(
        family=s.family,
        indices=indices,
        samples=values,
        threshold=threshold,
        trend=trend,
        status=status,
    )
