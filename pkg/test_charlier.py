import math

import pytest

from pydantic_schemas.charlier import CharlierMethod
from services.charlier_service import (
    charlier_conjugated,
    charlier_orthogonality,
    charlier_recurrence,
    charlier_rodrigues_oracle,
    charlier_sum,
    charlier_symbolic,
    charlier_symbolic_value,
    compare_methods,
    falling_to_monomial,
    stirling_first_signed,
)
from utils.errors import DomainError


def test_symbolic_coefficients():
    assert charlier_symbolic(0, 3).falling == pytest.approx([1])
    assert charlier_symbolic(1, 4).falling == pytest.approx([1, -0.25])
    a = 2.5
    assert charlier_symbolic(2, a).falling == pytest.approx([1, -2 / a, 1 / a**2])


def test_symbolic_coefficients_are_binomial():
    a = -1.5
    result = charlier_symbolic(6, a)
    expected = [math.comb(6, k) * (-1 / a) ** k for k in range(7)]
    assert result.falling == pytest.approx(expected)


@pytest.mark.parametrize(
    "n, a, x, value",
    [
        (2, 2, 3, -0.5),
        (1, 1, 0, 1),
        (3, 2, 1, -0.5),
        (0, 5, 7, 1),
    ],
)
def test_sum_values(n, a, x, value):
    assert charlier_sum(n, a, x) == pytest.approx(value)


@pytest.mark.parametrize("a", [0.5, 2, -1.5, 1 + 1j])
def test_all_routes_agree_on_the_lattice(a):
    for n in range(7):
        for x in range(9):
            agreement = compare_methods(n, a, x)
            assert set(agreement.values) == set(CharlierMethod)
            assert agreement.max_relative_deviation <= 1e-9


@pytest.mark.parametrize("x", [2.5, -0.75, 1 + 1j])
def test_routes_off_the_lattice(x):
    for n in range(6):
        reference = charlier_sum(n, 3, x)
        assert charlier_recurrence(n, 3, x) == pytest.approx(reference)
        assert charlier_symbolic_value(charlier_symbolic(n, 3), x) == pytest.approx(reference)
        agreement = compare_methods(n, 3, x)
        assert CharlierMethod.rodrigues not in agreement.values


def test_rodrigues_routes_need_lattice_points():
    with pytest.raises(DomainError):
        charlier_rodrigues_oracle(2, 2, 1.5)
    with pytest.raises(DomainError):
        charlier_conjugated(2, 2, -1)


def test_invalid_parameters():
    with pytest.raises(DomainError):
        charlier_symbolic(2, 0)
    with pytest.raises(DomainError):
        charlier_sum(-1, 2, 0)


def test_monomial_conversion():
    assert stirling_first_signed(3) == (0, 2, -3, 1)
    assert falling_to_monomial([1, -1, 0.25]) == pytest.approx([1, -1.25, 0.25])
    monomial = charlier_symbolic(2, 2).monomial
    x = 3
    assert sum(c * x**j for j, c in enumerate(monomial)) == pytest.approx(-0.5)


def test_orthogonality():
    same = charlier_orthogonality(2, 2, 2)
    assert same.value == pytest.approx(0.5 * math.exp(2), rel=1e-9)
    assert same.deviation <= 1e-9
    assert same.note is None
    different = charlier_orthogonality(1, 3, 2)
    assert abs(different.value) <= 1e-9
