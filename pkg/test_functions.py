import numpy as np
import pytest
from pydantic import ValidationError

from models.function import AnalyticFunction, Domain
from models.semantics import ModelKind, ModelSemantics
from models.weyl import WeylElement
from services.normal_ordering import multiply
from services.operators import BasisFamily, actD, actX, actXinv, basis_eval, call, interpret
from utils.errors import DomainError, PoleError
from utils.parsing import parse_function, parse_weyl

DELTA = ModelSemantics(kind=ModelKind.forward_difference)
CLASSICAL = ModelSemantics(kind=ModelKind.classical)
JACKSON_A = ModelSemantics(kind=ModelKind.jackson_a, q=0.5)
JACKSON_B = ModelSemantics(kind=ModelKind.jackson_b, q=0.5)
ALL_MODELS = [CLASSICAL, DELTA, JACKSON_A, JACKSON_B]


def sample_points(seed=5, size=12):
    rng = np.random.default_rng(seed)
    # stay away from 0, where the Jackson actions divide by t
    radius = rng.uniform(0.5, 2.0, size)
    angle = rng.uniform(0, 2 * np.pi, size)
    return radius * np.exp(1j * angle)


def test_actions_on_constants():
    one = AnalyticFunction.constant(1)
    assert actX(DELTA, one)(2.5) == pytest.approx(2.5)
    assert actX(JACKSON_A, one)(3) == pytest.approx(2)
    assert actX(JACKSON_B, one)(3) == pytest.approx(3)


def test_forward_difference_of_two_to_the_t():
    f = parse_function("pow(2,t)")
    t = sample_points()
    assert np.allclose(call(actD(DELTA, f), t), call(f, t))


def test_classical_d_differentiates_symbolically():
    derivative = actD(CLASSICAL, parse_function("sin(t)"))
    assert isinstance(derivative, AnalyticFunction)
    t = sample_points()
    assert np.allclose(derivative(t), np.cos(t))


@pytest.mark.parametrize("s", ALL_MODELS, ids=lambda s: s.kind.value)
def test_defining_relation_on_functions(s):
    """(∂X - λX∂) f = f pointwise."""
    f = parse_function("exp(t/3) + t^2", s.function_domain)
    t = sample_points()
    left = call(actD(s, actX(s, f)), t) - s.lam * call(actX(s, actD(s, f)), t)
    assert np.allclose(left, call(f, t))


@pytest.mark.parametrize("s", ALL_MODELS, ids=lambda s: s.kind.value)
def test_inverse_action_undoes_x(s):
    f = parse_function("cos(t) + 2", s.function_domain)
    t = sample_points(seed=9)
    assert np.allclose(call(actXinv(s, actX(s, f)), t), call(f, t))


def test_basis_closed_forms():
    assert basis_eval(DELTA, 3, 5) == pytest.approx(60)
    assert basis_eval(JACKSON_A, 2, 2) == pytest.approx(0)
    assert basis_eval(JACKSON_B, 3, 1) == pytest.approx(0.125)
    assert basis_eval(CLASSICAL, 4, 2) == pytest.approx(16)
    with pytest.raises(DomainError):
        basis_eval(DELTA, -1, 0)


@pytest.mark.parametrize("s", ALL_MODELS, ids=lambda s: s.kind.value)
def test_basis_matches_iterated_action(s):
    family = BasisFamily(s)
    t = sample_points(seed=13)
    for k in range(5):
        assert np.allclose(call(family(k), t), call(family.iterated(k), t))


def test_interpret_delta():
    one = AnalyticFunction.constant(1)
    t = sample_points()
    assert np.allclose(call(interpret(DELTA, parse_weyl("X^2"), one), t), t * (t - 1))
    assert np.allclose(call(interpret(DELTA, parse_weyl("d*X"), one), t), 1)


def test_function_values():
    assert parse_function("pow(2,t)")(3) == pytest.approx(8)
    assert parse_function("exp(2*pi*1i*t)")(0.25) == pytest.approx(1j)
    with pytest.raises(PoleError):
        parse_function("1/t")(0)
    with pytest.raises(PoleError):
        actXinv(DELTA, AnalyticFunction.constant(1))(-1)


def test_symbolic_derivative_of_a_constant_power():
    f = parse_function("pow(2,t)")
    assert f.derivative()(1.5) == pytest.approx(np.log(2) * 2**1.5)


def test_punctured_domain_rejects_zero():
    with pytest.raises(DomainError):
        AnalyticFunction.variable(Domain.punctured)(0)


def test_semantics_validation():
    with pytest.raises(ValidationError):
        ModelSemantics(kind=ModelKind.jackson_a)
    with pytest.raises(ValidationError):
        ModelSemantics(kind=ModelKind.jackson_b, q=1)
    with pytest.raises(ValidationError):
        ModelSemantics(kind=ModelKind.forward_difference, generator=parse_function("exp(t)"))
    periodic = ModelSemantics(kind=ModelKind.forward_difference, generator=parse_function("exp(2*pi*1i*t)"))
    assert periodic.basis.value == "falling-factorial"


def off_axis_points(seed=23, size=20):
    # imaginary parts bounded away from 0 keep clear of the real poles of the inverse actions
    rng = np.random.default_rng(seed)
    radius = rng.uniform(0.6, 2.0, size)
    angle = rng.uniform(0.3, np.pi - 0.3, size) * rng.choice([-1, 1], size)
    return radius * np.exp(1j * angle)


def nonzero_element(rng, size=2):
    terms = {}
    for _ in range(size):
        key = (int(rng.integers(-1, 3)), int(rng.integers(0, 3)))
        terms[key] = int(rng.choice([-3, -2, -1, 1, 2, 3]))
    return WeylElement(terms)


@pytest.mark.parametrize("s", ALL_MODELS, ids=lambda s: s.kind.value)
def test_interpret_turns_products_into_compositions(s):
    ctx = s.algebra()
    f = parse_function("exp(0.05*t) + t^2", s.function_domain)
    t = off_axis_points()
    rng = np.random.default_rng(31)
    for _ in range(50):
        a, b = nonzero_element(rng), nonzero_element(rng)
        together = call(interpret(s, multiply(ctx, a, b), f), t)
        in_turn = call(interpret(s, a, interpret(s, b, f)), t)
        scale = max(1.0, float(np.max(np.abs(in_turn))))
        assert float(np.max(np.abs(together - in_turn))) <= 1e-9 * scale


def test_classical_d_matches_central_differences():
    f = parse_function("sin(t)*exp(0.3*t) + t^3")
    t = sample_points()
    h = 1e-5
    central = (call(f, t + h) - call(f, t - h)) / (2 * h)
    exact = call(actD(CLASSICAL, f), t)
    assert np.allclose(central, exact, rtol=1e-6, atol=0)
