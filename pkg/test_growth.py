import math

import pytest

from models.function import Domain
from pydantic_schemas.growth import CheckStatus
from services.growth_service import (
    exp_type_check,
    exp_type_estimate,
    little_o_check,
    little_o_status,
    max_modulus,
    q_growth_check,
    q_growth_diagnostic,
    vertical_growth_check,
)
from utils.errors import DomainError
from utils.parsing import parse_function

LN2 = math.log(2)


def test_max_modulus():
    assert max_modulus(parse_function("pow(2,t)"), 5) == pytest.approx(32)
    assert max_modulus(parse_function("t^2 + 1"), 3) == pytest.approx(10)


def test_exponential_type_estimates():
    assert 0.67 <= exp_type_estimate(parse_function("pow(2,t)")).tau_hat <= 0.72
    assert exp_type_estimate(parse_function("5")).tau_hat <= 0.01
    assert exp_type_estimate(parse_function("sin(2*pi*t)")).tau_hat == pytest.approx(2 * math.pi, rel=0.05)


def test_exponential_type_estimate_truncates_on_overflow():
    estimate = exp_type_estimate(parse_function("exp(exp(t))"))
    assert len(estimate.radii) < 7
    assert "truncated" in estimate.confidence
    assert exp_type_check(estimate, LN2).status == CheckStatus.indeterminate
    with pytest.raises(DomainError):
        exp_type_estimate(parse_function("t"), r_max=0.5)


def test_exponential_type_check():
    assert exp_type_check(exp_type_estimate(parse_function("pow(2,t)")), LN2).status == CheckStatus.passed
    assert exp_type_check(exp_type_estimate(parse_function("exp(t)")), LN2).status == CheckStatus.failed


@pytest.mark.parametrize("text", ["3", "t^2", "1 + (t - 1) + 0.5*(t - 1)*(0.5*t - 1)"])
def test_q_growth_functional_decays_for_polynomial_growth(text):
    estimate = q_growth_diagnostic(parse_function(text, Domain.punctured), 0.5)
    assert estimate.threshold == pytest.approx(1 / LN2)
    assert estimate.q_growth[-1] < estimate.q_growth[1]
    assert q_growth_check(estimate).status == CheckStatus.passed


def test_q_growth_samples_each_radius():
    radii = [2.0, 8.0, 64.0]
    estimate = q_growth_diagnostic(parse_function("t^2", Domain.punctured), 0.5, radii)
    assert estimate.radii == radii
    assert estimate.q_growth == pytest.approx([4 / math.log(r) for r in radii])


def test_q_growth_check_never_fails():
    estimate = q_growth_diagnostic(parse_function("exp(t)", Domain.punctured), 0.5)
    assert q_growth_check(estimate).status == CheckStatus.indeterminate
    with pytest.raises(DomainError):
        q_growth_diagnostic(parse_function("t"), 2.0)


@pytest.mark.parametrize(
    "text, status",
    [
        ("pow(2,-t)", CheckStatus.passed),
        ("pow(2,t)", CheckStatus.failed),
        ("1", CheckStatus.passed),
        ("t", CheckStatus.failed),
    ],
)
def test_vertical_growth(text, status):
    assert vertical_growth_check(parse_function(text)).status == status


def test_vertical_growth_divides_by_the_generator():
    p = parse_function("exp(2*pi*1i*t)")
    check = vertical_growth_check(p, p)
    assert check.status == CheckStatus.passed
    assert check.samples == pytest.approx([1 / x for x in (4, 8, 16, 32, 64)])


@pytest.mark.parametrize(
    "text, status",
    [
        ("3", CheckStatus.passed),
        ("t - 1", CheckStatus.failed),
        ("exp(t)", CheckStatus.failed),
    ],
)
def test_little_o_check(text, status):
    assert little_o_check(parse_function(text)).status == status


@pytest.mark.parametrize(
    "samples, status",
    [
        ([0.5, 0.3, 0.05], CheckStatus.passed),
        ([1.0, 1.0, 1.0], CheckStatus.failed),
        ([1.0, 0.4, 0.2], CheckStatus.indeterminate),
        ([0.05, 0.08, 0.06], CheckStatus.indeterminate),
        ([1.0, math.inf], CheckStatus.failed),
        ([], CheckStatus.indeterminate),
    ],
)
def test_little_o_status(samples, status):
    assert little_o_status(samples, 0.1) == status
