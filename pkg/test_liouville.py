import math

import pytest
from pydantic import ValidationError

from models.function import Domain
from pydantic_schemas.coefficient import CoefficientMethod, CoefficientSeries
from pydantic_schemas.growth import CheckStatus, HypothesisCheck, LiouvilleReport, TheoremTag, Verdict
from models.semantics import BasisTag, ModelKind
from services.liouville_service import (
    VerdictParams,
    assemble_verdict,
    classical_liouville_verdict,
    delta_liouville_verdict,
    q_liouville_verdict,
)
from utils.errors import DomainError
from utils.parsing import parse_function

PARAMS = VerdictParams(K=6)


def oracle_values(report):
    return [row.oracle for row in report.coefficients]


def test_delta_periodic_quotient_is_consistent():
    f = parse_function("exp(2*pi*1i*t)")
    report = delta_liouville_verdict(f, f, PARAMS)
    assert report.theorem == TheoremTag.delta
    assert report.verdict == Verdict.consistent
    assert all(abs(a) <= 1e-8 for a in oracle_values(report)[1:])
    assert report.conclusion_residual <= 1e-10


def test_delta_two_to_the_t_violates_the_hypotheses():
    report = delta_liouville_verdict(parse_function("pow(2,t)"), params=PARAMS)
    assert report.verdict == Verdict.hypothesis_violated
    assert [check.status for check in report.hypotheses] == [CheckStatus.passed, CheckStatus.failed]
    assert oracle_values(report) == pytest.approx([1 / math.factorial(k) for k in range(7)])


def test_delta_two_to_the_minus_t_records_a_discrepancy():
    report = delta_liouville_verdict(parse_function("pow(2,-t)"), params=PARAMS)
    assert all(check.status == CheckStatus.passed for check in report.hypotheses)
    assert report.verdict == Verdict.discrepancy_recorded
    assert oracle_values(report) == pytest.approx([(-0.5) ** k / math.factorial(k) for k in range(7)])
    assert report.conclusion_residual > 0.1
    assert report.exactness is not None and report.exactness.discrepancy > 0
    assert report.bounds and all(check.holds for check in report.bounds)
    assert all(row.residue is not None for row in report.coefficients)


def test_q_constant_is_consistent():
    report = q_liouville_verdict(parse_function("3", Domain.punctured), 0.5, PARAMS)
    assert report.theorem == TheoremTag.q
    assert report.verdict == Verdict.consistent
    assert oracle_values(report)[0] == pytest.approx(3)


def test_q_first_basis_element_violates_little_o():
    report = q_liouville_verdict(parse_function("t - 1", Domain.punctured), 0.5, PARAMS)
    assert report.verdict == Verdict.hypothesis_violated
    assert oracle_values(report)[1] == pytest.approx(1)


def test_q_verdict_needs_small_q():
    with pytest.raises(DomainError):
        q_liouville_verdict(parse_function("3", Domain.punctured), 2.0, PARAMS)


@pytest.mark.parametrize(
    "text, verdict",
    [
        ("5", Verdict.consistent),
        ("t", Verdict.hypothesis_violated),
        ("exp(t)", Verdict.hypothesis_violated),
    ],
)
def test_classical_verdicts(text, verdict):
    report = classical_liouville_verdict(parse_function(text), PARAMS)
    assert report.verdict == verdict


def test_classical_coefficients_are_recorded():
    report = classical_liouville_verdict(parse_function("exp(t)"), PARAMS)
    assert oracle_values(report) == pytest.approx([1 / math.factorial(k) for k in range(7)])
    assert classical_liouville_verdict(parse_function("t"), PARAMS).coefficients[1].oracle == pytest.approx(1)
    constant = classical_liouville_verdict(parse_function("5"), PARAMS)
    assert all(abs(a) <= 1e-10 for a in oracle_values(constant)[1:])


def _series(values):
    return CoefficientSeries(
        values=values,
        errors=[0.0] * len(values),
        kind=ModelKind.classical,
        basis=BasisTag.monomial,
        method=CoefficientMethod.oracle,
    )


def test_assemble_verdict():
    passed = HypothesisCheck(name="h", status=CheckStatus.passed)
    unsure = HypothesisCheck(name="h", status=CheckStatus.indeterminate)
    failed = HypothesisCheck(name="h", status=CheckStatus.failed)
    flat = _series([2, 0, 0])
    assert assemble_verdict([passed], flat, 0.0, PARAMS) == Verdict.consistent
    assert assemble_verdict([passed, unsure], flat, 0.0, PARAMS) == Verdict.discrepancy_recorded
    assert assemble_verdict([unsure, failed], flat, 0.0, PARAMS) == Verdict.hypothesis_violated
    assert assemble_verdict([passed], _series([2, 1e-3, 0]), 0.0, PARAMS) == Verdict.discrepancy_recorded
    assert assemble_verdict([passed], flat, 1.0, PARAMS) == Verdict.discrepancy_recorded


def test_report_refuses_an_unsupported_consistent_verdict():
    with pytest.raises(ValidationError):
        LiouvilleReport(
            theorem=TheoremTag.classical,
            hypotheses=[HypothesisCheck(name="h", status=CheckStatus.indeterminate)],
            coefficients=[],
            coefficient_tolerance=1e-8,
            conclusion="constancy",
            conclusion_residual=0.0,
            residual_tolerance=1e-8,
            verdict=Verdict.consistent,
        )
