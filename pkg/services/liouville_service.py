# services/liouville_service.py
"""
Verdict reports for the three Liouville-type statements (forward difference,
Jackson, classical). Each report holds the sampled hypothesis checks, the
oracle coefficient table with the residue values beside it, and the residual of
the expected conclusion (periodicity or constancy).
"""

import logging
import math
from numbers import Number
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from models.contour import Circle, VerticalLine
from models.function import AnalyticFunction
from models.semantics import ModelKind, ModelSemantics, periodicity_grid
from pydantic_schemas.coefficient import BoundCheck, CoefficientSeries, ResidueComparison
from pydantic_schemas.growth import CheckStatus, HypothesisCheck, LiouvilleReport, TheoremTag, Verdict
from services import coefficient_service, growth_service
from services.operators import call
from utils.errors import DomainError, WeylSeriesError

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)


class VerdictParams(BaseModel):
    """Tolerances and sampling grids shared by the three verdicts."""

    model_config = ConfigDict(frozen=True)

    K: int = Field(default=8, ge=1)
    coefficient_tolerance: float = Field(default=1e-8, gt=0)
    residual_tolerance: float = Field(default=1e-8, gt=0)
    growth_margin: float = Field(default=0.1, gt=0)
    line: VerticalLine = Field(default_factory=VerticalLine)
    circle: Circle = Field(default_factory=Circle)
    x_sequence: List[float] = Field(default_factory=lambda: list(growth_service.DEFAULT_X_SEQUENCE))
    y_grid: List[float] = Field(default_factory=lambda: list(growth_service.DEFAULT_Y_GRID))
    radii: List[float] = Field(default_factory=lambda: list(growth_service.DEFAULT_O_RADII))
    r_max: float = growth_service.DEFAULT_R_MAX
    bound_sequence: List[float] = Field(default_factory=lambda: [8.0, 16.0, 32.0])
    bound_orders: int = Field(default=3, ge=1)


def assemble_verdict(
    hypotheses: Sequence[HypothesisCheck],
    coefficients: CoefficientSeries,
    residual: float,
    params: VerdictParams,
) -> Verdict:
    if any(check.status == CheckStatus.failed for check in hypotheses):
        return Verdict.hypothesis_violated
    all_passed = all(check.status == CheckStatus.passed for check in hypotheses)
    vanishing = all(abs(a) <= params.coefficient_tolerance for a in coefficients.values[1:])
    if all_passed and vanishing and residual <= params.residual_tolerance:
        return Verdict.consistent
    return Verdict.discrepancy_recorded


def _comparison_table(oracle: CoefficientSeries, residues: Optional[CoefficientSeries]) -> List[ResidueComparison]:
    rows = []
    for k, value in enumerate(oracle.values):
        if residues is None:
            rows.append(ResidueComparison(k=k, oracle=value))
        else:
            residue = residues.values[k]
            rows.append(ResidueComparison(k=k, oracle=value, residue=residue, deviation=abs(residue - value)))
    return rows


def _try_residues(s: ModelSemantics, f, K: int, spec, warnings: List[str]) -> Optional[CoefficientSeries]:
    try:
        series = coefficient_service.residue_series(s, f, K, spec)
    except WeylSeriesError as exc:
        logger.error(f"Residue extraction failed for {s.kind.value}: {exc}")
        warnings.append(f"residue extraction unavailable: {exc}")
        return None
    warnings.extend(message for message in series.warnings if message not in warnings)
    return series


def _finish(verdict: Verdict, theorem: TheoremTag) -> Verdict:
    log = logger.warning if verdict == Verdict.discrepancy_recorded else logger.info
    log(f"{theorem.value} verdict: {verdict.value}")
    return verdict


def delta_liouville_verdict(
    f: AnalyticFunction,
    p: Optional[AnalyticFunction] = None,
    params: Optional[VerdictParams] = None,
) -> LiouvilleReport:
    """
    Hypotheses: f/p of exponential type at most ln 2, and (f/p)(x_n+iy) = o(x_n)
    on the y-grid. Conclusion: f(t+1) = f(t) on the periodicity grid.
    """
    params = params or VerdictParams()
    p = p or AnalyticFunction.constant(1)
    s = ModelSemantics(kind=ModelKind.forward_difference, generator=p)
    logger.info(f"Assembling the Delta verdict for f = {f}, p = {p}")
    quotient = f if p.is_constant() and complex(p(1.0)) == 1 else f / p

    growth = growth_service.exp_type_estimate(quotient, params.r_max)
    hypotheses = [
        growth_service.exp_type_check(growth, LN2, params.growth_margin),
        growth_service.vertical_growth_check(
            f, p, params.x_sequence, params.y_grid, params.growth_margin
        ),
    ]
    oracle = coefficient_service.newton_oracle(quotient, params.K)
    warnings = list(oracle.warnings)
    residues = _try_residues(s, f, params.K, params.line, warnings)

    grid = periodicity_grid()
    residual = growth_service.sample_residual(call(f, grid + 1.0) - call(f, grid), "f(t+1) - f(t)")
    exactness = coefficient_service.delta_exactness_probe(AnalyticFunction.variable(), params.line)
    warnings.append(
        f"Res(Δt) measured {exactness.measured} where vanishing on difference images predicts 0"
    )
    bounds: List[BoundCheck] = []
    for x in params.bound_sequence:
        for k in range(1, min(params.K, params.bound_orders) + 1):
            try:
                bounds.append(coefficient_service.barnes_bound_check(f, k, x + params.line.a, params.line, p))
            except WeylSeriesError as exc:
                warnings.append(f"bound check skipped at x_n = {x:g}, k = {k}: {exc}")

    verdict = _finish(assemble_verdict(hypotheses, oracle, residual, params), TheoremTag.delta)
    return LiouvilleReport(
        theorem=TheoremTag.delta,
        hypotheses=hypotheses,
        coefficients=_comparison_table(oracle, residues),
        coefficient_tolerance=params.coefficient_tolerance,
        conclusion="periodicity: max |f(t+1) - f(t)| over Re t in [-2, 2], Im t in [-0.5, 0.5]",
        conclusion_residual=residual,
        residual_tolerance=params.residual_tolerance,
        verdict=verdict,
        growth=growth,
        exactness=exactness,
        bounds=bounds,
        grids={
            "x_sequence": params.x_sequence,
            "y_grid": [min(params.y_grid), max(params.y_grid), len(params.y_grid)],
            "line": params.line.model_dump(),
        },
        warnings=warnings,
    )


def _constancy_residual(f: AnalyticFunction, anchor: complex = 1.0) -> float:
    radii = np.array([0.5, 1.0, 2.0])
    angles = np.exp(2j * np.pi * np.arange(16) / 16)
    grid = (radii[:, None] * angles[None, :]).ravel()
    return growth_service.sample_residual(call(f, grid) - f(anchor), "f(t) - f(t0)")


def q_liouville_verdict(f: AnalyticFunction, q: Number, params: Optional[VerdictParams] = None) -> LiouvilleReport:
    """Hypothesis |f(t)| = o(|t|); conclusion: f constant on ℂ*."""
    params = params or VerdictParams()
    if not 0 < abs(q) < 1:
        raise DomainError(f"the q verdict needs 0 < |q| < 1, got q = {q}")
    s = ModelSemantics(kind=ModelKind.jackson_a, q=q)
    logger.info(f"Assembling the Q verdict for f = {f}, q = {q}")

    growth = growth_service.q_growth_diagnostic(f, q)
    hypotheses = [
        growth_service.little_o_check(f, params.radii, params.growth_margin),
        growth_service.q_growth_check(growth),
    ]
    oracle = coefficient_service.q_oracle(f, q, params.K)
    warnings: List[str] = []
    residues = _try_residues(s, f, params.K, params.circle, warnings)
    residual = _constancy_residual(f)
    verdict = _finish(assemble_verdict(hypotheses, oracle, residual, params), TheoremTag.q)
    return LiouvilleReport(
        theorem=TheoremTag.q,
        hypotheses=hypotheses,
        coefficients=_comparison_table(oracle, residues),
        coefficient_tolerance=params.coefficient_tolerance,
        conclusion="constancy: max |f(t) - f(1)| on |t| in {0.5, 1, 2}",
        conclusion_residual=residual,
        residual_tolerance=params.residual_tolerance,
        verdict=verdict,
        growth=growth,
        grids={"radii": params.radii, "circle": params.circle.model_dump()},
        warnings=warnings,
    )


def classical_liouville_verdict(f: AnalyticFunction, params: Optional[VerdictParams] = None) -> LiouvilleReport:
    """Hypothesis |f(t)| = o(|t|); conclusion: f constant."""
    params = params or VerdictParams()
    s = ModelSemantics(kind=ModelKind.classical)
    logger.info(f"Assembling the Classical verdict for f = {f}")

    hypotheses = [growth_service.little_o_check(f, params.radii, params.growth_margin)]
    oracle = coefficient_service.taylor_oracle(f, params.K)
    warnings: List[str] = []
    residues = _try_residues(s, f, params.K, params.circle, warnings)
    residual = _constancy_residual(f)
    verdict = _finish(assemble_verdict(hypotheses, oracle, residual, params), TheoremTag.classical)
    return LiouvilleReport(
        theorem=TheoremTag.classical,
        hypotheses=hypotheses,
        coefficients=_comparison_table(oracle, residues),
        coefficient_tolerance=params.coefficient_tolerance,
        conclusion="constancy: max |f(t) - f(1)| on |t| in {0.5, 1, 2}",
        conclusion_residual=residual,
        residual_tolerance=params.residual_tolerance,
        verdict=verdict,
        grids={"radii": params.radii, "circle": params.circle.model_dump()},
        warnings=warnings,
    )
