import logging
from typing import Any, Dict, List, Optional, Sequence

from models.function import AnalyticFunction
from models.semantics import ModelKind
from models.weyl import FormalSeriesF, SeriesFamily
from pydantic_schemas.charlier import CharlierMethod
from pydantic_schemas.coefficient import ResidueComparison
from pydantic_schemas.growth import Verdict
from pydantic_schemas.report import Report
from pydantic_schemas.run_config import ExtractMethod, RunConfig
from services import charlier_service, coefficient_service, liouville_service
from services.normal_ordering import family_diagnostics, reduce_mod_ideal, symbolic_residue
from services.operators import call, interpret
from utils.errors import DomainError
from utils.formatting import format_weyl
from utils.parsing import parse_function, parse_weyl

logger = logging.getLogger(__name__)


def _family_of(config: RunConfig) -> SeriesFamily:
    if config.model == ModelKind.forward_difference:
        return SeriesFamily.difference
    if config.model == ModelKind.classical:
        return SeriesFamily.classical
    return SeriesFamily.q_large if abs(config.q) > 1 else SeriesFamily.q_small


class ReportService:
    """
    Runs one subcommand under a RunConfig and wraps the outcome in a Report.

    The CLI and the HTTP routes both go through this class, so a given
    configuration and input produce the same report on either surface.
    """

    def __init__(self, config: RunConfig):
        self.config = config

    def _report(self, command: str, inputs: Dict[str, Any], **sections) -> Report:
        config = self.config.echo()
        config.update({key: value for key, value in inputs.items() if value is not None})
        return Report(command=command, config=config, **sections)

    def _function(self, text: str) -> AnalyticFunction:
        return parse_function(text, self.config.semantics().function_domain)

    def normalize(self, expr: str, exact: bool = False) -> Report:
        """
        Normal form of a Weyl expression under the configured λ.

        Args:
            expr: expression in X, Xinv, d, lambda and complex literals
            exact: read decimals as exact fractions

        Returns:
            Report with the printed normal form and its (m, n, c) terms
        """
        element = parse_weyl(expr, self.config.algebra(), exact=exact)
        terms = [{"m": m, "n": n, "c": c} for (m, n), c in element.sorted_terms()]
        return self._report(
            "normalize",
            {"expr": expr},
            results=[{"normal_form": format_weyl(element), "terms": terms}],
        )

    def reduce(self, expr: str, exact: bool = False) -> Report:
        """Class of the expression modulo the left ideal generated by d, and its residue."""
        element = parse_weyl(expr, self.config.algebra(), exact=exact)
        reduced = reduce_mod_ideal(element)
        return self._report(
            "reduce",
            {"expr": expr},
            results=[
                {
                    "reduced": format_weyl(reduced.to_element()),
                    "residue": symbolic_residue(reduced),
                    "exponents": reduced.exponents(),
                }
            ],
        )

    def expand(self, expr: str, p: Optional[str] = None, points: Sequence[complex] = ()) -> Report:
        """
        The series Σ a_k φ_k of the class of ``expr`` under the configured model,
        evaluated at ``points``, with the family diagnostic of its coefficients.
        """
        config = self.config
        generator = self._function(p) if p else None
        semantics = config.semantics(generator)
        reduced = reduce_mod_ideal(parse_weyl(expr, semantics.algebra()))
        results: List[Dict[str, Any]] = [
            {"k": k, "a_k": reduced.coefficient(k), "basis": semantics.basis.value} for k in reduced.exponents()
        ]
        evaluator = interpret(semantics, reduced, semantics.generator)
        agreement = [{"t": t, "value": complex(call(evaluator, t))} for t in points]
        checks: List[Any] = []
        warnings: List[str] = []
        nonnegative = [k for k in reduced.exponents() if k >= 0]
        if nonnegative and max(nonnegative) >= 2 and min(reduced.exponents() or [0]) >= 0:
            coeffs = [reduced.coefficient(k) for k in range(max(nonnegative) + 1)]
            series = FormalSeriesF(
                coeffs=[complex(c) for c in coeffs],
                family=_family_of(config),
                q=config.q if config.model.is_jackson else None,
            )
            checks.append(family_diagnostics(series))
        else:
            warnings.append("family diagnostic skipped: needs nonnegative exponents up to at least 2")
        return self._report(
            "expand",
            {"expr": expr, "p": p},
            results=results,
            agreement=agreement,
            checks=checks,
            warnings=warnings,
        )

    def extract(
        self,
        f_text: str,
        p_text: Optional[str] = None,
        method: ExtractMethod = ExtractMethod.oracle,
    ) -> Report:
        """
        Coefficients a_0..a_K of f in the basis of the configured model.

        Args:
            f_text: function expression
            p_text: generator expression, default 1
            method: oracle, residue, or both (with a per-k agreement block)

        Returns:
            Report whose results are (k, re, im, err, method) records
        """
        config = self.config
        f = self._function(f_text)
        p = self._function(p_text) if p_text else None
        semantics = config.semantics(p)
        results: List[Any] = []
        warnings: List[str] = []
        oracle = residues = None
        if method in (ExtractMethod.oracle, ExtractMethod.both):
            oracle = coefficient_service.oracle_series(semantics, f, config.K)
            results.extend(oracle.records())
            warnings.extend(oracle.warnings)
        if method in (ExtractMethod.residue, ExtractMethod.both):
            residues = coefficient_service.residue_series(semantics, f, config.K, config.contour())
            results.extend(residues.records())
            warnings.extend(m for m in residues.warnings if m not in warnings)
        agreement = []
        if oracle is not None and residues is not None:
            agreement = [
                ResidueComparison(k=k, oracle=a, residue=b, deviation=abs(a - b))
                for k, (a, b) in enumerate(zip(oracle.values, residues.values))
            ]
        return self._report(
            "extract",
            {"f": f_text, "p": p_text, "method": method.value},
            results=results,
            agreement=agreement,
            warnings=warnings,
        )

    def residue(self, g_text: str) -> Report:
        """Numeric residue of g on the configured contour (line for delta, circle otherwise)."""
        g = self._function(g_text)
        result = coefficient_service.numeric_residue(g, self.config.contour())
        row = {"value": result.value, "error": result.error, "tail": result.tail, "flagged": result.flagged}
        return self._report("residue", {"g": g_text}, results=[row], warnings=result.warnings)

    def liouville(self, f_text: str, p_text: Optional[str] = None) -> Report:
        """
        The verdict report of the Liouville-type statement matching the model.

        Returns:
            Report with the coefficient table, hypothesis checks, proof-bound
            checks (delta only) and the verdict
        """
        config = self.config
        f = self._function(f_text)
        params = liouville_service.VerdictParams(
            K=max(config.K, 1),
            coefficient_tolerance=config.coefficient_tolerance,
            residual_tolerance=config.residual_tolerance,
            growth_margin=config.growth_margin,
            circle=config.circle(),
        )
        if config.model == ModelKind.forward_difference:
            params = params.model_copy(update={"line": config.vertical_line()})
            p = self._function(p_text) if p_text else None
            report = liouville_service.delta_liouville_verdict(f, p, params)
        elif config.model == ModelKind.jackson_a:
            report = liouville_service.q_liouville_verdict(f, config.q, params)
        elif config.model == ModelKind.classical:
            report = liouville_service.classical_liouville_verdict(f, params)
        else:
            raise DomainError("the liouville command covers the delta, qa and classical models")

        results = [row.model_dump() for row in report.coefficients]
        summary = {
            "theorem": report.theorem.value,
            "conclusion": report.conclusion,
            "conclusion_residual": report.conclusion_residual,
            "growth": report.growth,
            "exactness": report.exactness,
            "grids": report.grids,
        }
        return self._report(
            "liouville",
            {"f": f_text, "p": p_text},
            results=results,
            checks=[check for check in report.hypotheses] + [summary],
            bounds=report.bounds,
            warnings=report.warnings,
            verdict=report.verdict.value,
        )

    def charlier(self, n: int, a: complex, points: Sequence[complex] = ()) -> Report:
        """C_n(x; a) coefficients, and every evaluation route at the given points."""
        result = charlier_service.charlier_symbolic(n, a)
        agreement = [charlier_service.compare_methods(n, a, x) for x in points]
        results = [
            {"k": k, "falling": c, "monomial": m}
            for k, (c, m) in enumerate(zip(result.falling, result.monomial))
        ]
        values = [
            {"x": row.x, "value": row.values[CharlierMethod.sum]} for row in agreement
        ]
        checks = [charlier_service.charlier_orthogonality(n, n, a)] if n <= 12 else []
        return self._report(
            "charlier",
            {"n": n, "a": a, "x": list(points) or None},
            results=results + values,
            agreement=agreement,
            checks=checks,
        )


def exit_code(report: Report) -> int:
    return 1 if report.verdict == Verdict.hypothesis_violated.value else 0
