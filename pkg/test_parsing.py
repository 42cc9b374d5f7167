from fractions import Fraction

import pytest

from models.function import Domain
from models.semantics import ModelKind
from models.weyl import AlgebraParams, WeylElement
from utils.errors import DomainError, ParseError, PoleError
from utils.formatting import format_weyl, to_jsonable
from utils.parsing import iter_points, parse_function, parse_weyl, parse_weyl_expr, print_weyl_expr


@pytest.mark.parametrize(
    "text, printed",
    [
        ("d*X", "X*d + 1"),
        ("(1 - X/2)^2", "1 - X + 0.25*X^2"),
        ("d*Xinv", "Xinv*d - Xinv^2"),
        ("X*d - X*d", "0"),
        ("2*X + 3*X", "5*X"),
    ],
)
def test_normal_form_printing(text, printed):
    assert format_weyl(parse_weyl(text)) == printed


ROUND_TRIP_CORPUS = [
    "d*X",
    "X*d + 1",
    "-X^2 + 3*d",
    "(X + d)^3 - Xinv^-2",
    "2i*X*(d - 0.5)",
    "(-X)^2*d/4",
    "lambda*X*d",
    "q*X*d - d*X",
    "X^-1",
    "X^-3*d^2",
    "Xinv",
    "Xinv^4 + Xinv^2",
    "Xinv^3*d - 2*Xinv",
    "(0.3+0.1i)*X",
    "(0.3+0.1i)^2*d*X",
    "d*(0.5-2i)*Xinv",
    "(X^2)^3",
    "((X + 1)^2)^2",
    "(d^2*X)^2 - (X*d)^3",
    "X/4",
    "(X + d)/2.5",
    "d/3*X/2",
    "1 - X/2 + X^2/8",
    "-(-d)",
    "--X + d",
    "1e-3*X + 2.50*d",
    ".5*X*Xinv",
    "0",
    "7",
    "(1 - X/3)^5*d^0",
]


def test_round_trip_corpus_has_thirty_entries():
    assert len(set(ROUND_TRIP_CORPUS)) == 30


@pytest.mark.parametrize("text", ROUND_TRIP_CORPUS)
def test_print_then_parse_gives_the_same_tree(text):
    tree = parse_weyl_expr(text)
    assert parse_weyl_expr(print_weyl_expr(tree)) == tree


def test_exact_mode_reads_decimals_as_fractions():
    element = parse_weyl("0.5*X + 0.25", exact=True)
    assert element.coefficient(1) == Fraction(1, 2)
    assert isinstance(element.coefficient(0), Fraction)


def test_negative_powers_and_division():
    assert parse_weyl("Xinv^-2") == WeylElement.monomial(2)
    assert parse_weyl("(2*X)^-1") == WeylElement.monomial(-1, 0, Fraction(1, 2))
    assert parse_weyl("X/2").coefficient(1) == Fraction(1, 2)


def test_lambda_symbol_is_the_configured_parameter():
    ctx = AlgebraParams(lam=Fraction(1, 2))
    assert parse_weyl("lambda*X", ctx).coefficient(1) == Fraction(1, 2)
    assert parse_weyl("d*X - q*X*d", ctx) == WeylElement.one()


@pytest.mark.parametrize(
    "text, position",
    [
        ("X $ d", 2),
        ("X + * d", 4),
        ("foo*X", 0),
        ("(X + d", 6),
    ],
)
def test_parse_errors_carry_the_position(text, position):
    with pytest.raises(ParseError) as excinfo:
        parse_weyl(text)
    assert excinfo.value.position == position
    assert "^" in excinfo.value.describe()


@pytest.mark.parametrize("text", ["d^-1", "X^65", "X/d", "X/0", "(X + d)^-1"])
def test_rejected_weyl_expressions(text):
    with pytest.raises(ParseError):
        parse_weyl(text)


def test_function_evaluation():
    assert parse_function("pow(2,t)")(3) == pytest.approx(8)
    assert parse_function("exp(2*pi*1i*t)")(0.25) == pytest.approx(1j)
    assert parse_function("-t^2 + 3e-1*t")(2) == pytest.approx(-3.4)
    with pytest.raises(PoleError):
        parse_function("1/t")(0)


def test_function_domain():
    f = parse_function("t + 1", Domain.punctured)
    assert f(1) == pytest.approx(2)
    with pytest.raises(DomainError):
        f(0)


@pytest.mark.parametrize("text", ["pow(t,2)", "pow(0,t)", "sinh(t)", "t^0.5", "exp(t", "1/0"])
def test_rejected_function_expressions(text):
    with pytest.raises(ParseError):
        parse_function(text)


def test_iter_points():
    assert list(iter_points("0, 1.5, (2+1i), -0.5i")) == [0, 1.5, 2 + 1j, -0.5j]
    assert list(iter_points("")) == []
    with pytest.raises(ParseError):
        list(iter_points("1, t"))


def test_enums_render_as_their_values():
    assert to_jsonable(ModelKind.forward_difference) == "delta"
    assert to_jsonable({"model": ModelKind.jackson_a, "rows": [ModelKind.classical]}) == {
        "model": "qa",
        "rows": ["classical"],
    }
