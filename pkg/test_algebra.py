import math
from fractions import Fraction

import numpy as np
import pytest

from models.weyl import AlgebraParams, FormalSeriesF, LaurentPoly, SeriesFamily, WeylElement
from services.normal_ordering import (
    add,
    commutator_defect,
    family_diagnostics,
    multiply,
    power,
    reduce_mod_ideal,
    reduced_d_action,
    symbolic_coefficient,
    symbolic_residue,
)
from utils.errors import DomainError
from utils.formatting import format_weyl
from utils.qnumbers import q_integer

X, Xinv, d = WeylElement.X(), WeylElement.Xinv(), WeylElement.d()
WEYL = AlgebraParams()


def element(**terms):
    """element(X1d1=1, X0d0=2) -> X*d + 2"""
    parsed = {}
    for key, value in terms.items():
        m, n = key[1:].split("d")
        parsed[(int(m.replace("m", "-")), int(n))] = value
    return WeylElement(parsed)


def random_element(rng, size=3):
    terms = {}
    for _ in range(size):
        key = (int(rng.integers(-2, 3)), int(rng.integers(0, 3)))
        terms[key] = int(rng.integers(-3, 4))
    return WeylElement(terms)


def test_addition():
    assert (multiply(WEYL, X, d) + -multiply(WEYL, X, d)).is_zero()
    assert X.scale(2) + X.scale(3) == X.scale(5)
    total = X + d + Xinv
    assert total.terms == {(1, 0): 1, (0, 1): 1, (-1, 0): 1}


def test_weyl_products():
    assert multiply(WEYL, d, X) == element(X1d1=1, X0d0=1)
    assert multiply(WEYL, power(WEYL, d, 2), power(WEYL, X, 2)) == element(X2d2=1, X1d1=4, X0d0=2)
    assert multiply(WEYL, d, Xinv) == element(Xm1d1=1, Xm2d0=-1)


def test_q_weyl_product_is_exact_with_fractions():
    q = Fraction(1, 3)
    ctx = AlgebraParams(lam=q)
    result = multiply(ctx, d, power(ctx, X, 2))
    assert result == element(X2d1=q**2, X1d0=1 + q)
    assert all(isinstance(c, (int, Fraction)) for c in result.terms.values())


def test_powers():
    assert power(WEYL, WeylElement.one() - X.scale(Fraction(1, 2)), 0) == WeylElement.one()
    squared = power(WEYL, WeylElement.one() - X.scale(Fraction(1, 2)), 2)
    assert squared == element(X0d0=1, X1d0=-1, X2d0=Fraction(1, 4))
    assert format_weyl(squared) == "1 - X + 0.25*X^2"
    assert power(WEYL, multiply(WEYL, X, d), 2) == element(X2d2=1, X1d1=1)
    with pytest.raises(DomainError):
        power(WEYL, X, -1)


@pytest.mark.parametrize("lam", [1, Fraction(1, 2), Fraction(-3, 2), 0.5 + 0.2j, 2.0])
def test_defining_relation_normalizes_to_one(lam):
    assert commutator_defect(AlgebraParams(lam=lam)) == WeylElement.one()


@pytest.mark.parametrize("lam", [1, Fraction(2, 3), Fraction(-1, 2)])
def test_multiplication_is_associative(lam):
    ctx = AlgebraParams(lam=lam)
    rng = np.random.default_rng(7)
    for _ in range(20):
        a, b, c = (random_element(rng) for _ in range(3))
        assert multiply(ctx, multiply(ctx, a, b), c) == multiply(ctx, a, multiply(ctx, b, c))


FLOAT_LAMBDAS = [1.0, 0.5, 2.0, 0.3 + 0.1j]


def relative_deviation(left, right):
    scale = max([1.0] + [abs(c) for c in right.terms.values()])
    return left.max_deviation(right) / scale


@pytest.mark.parametrize("lam", FLOAT_LAMBDAS)
def test_floating_products_are_associative(lam):
    ctx = AlgebraParams(lam=lam)
    rng = np.random.default_rng(17)
    for _ in range(50):
        a, b, c = (random_element(rng) for _ in range(3))
        left = multiply(ctx, multiply(ctx, a, b), c)
        right = multiply(ctx, a, multiply(ctx, b, c))
        assert relative_deviation(left, right) <= 1e-12


@pytest.mark.parametrize("lam", FLOAT_LAMBDAS)
def test_products_distribute_over_sums(lam):
    ctx = AlgebraParams(lam=lam)
    rng = np.random.default_rng(19)
    for _ in range(50):
        a, b, c = (random_element(rng) for _ in range(3))
        left = multiply(ctx, a, add(b, c))
        assert relative_deviation(left, add(multiply(ctx, a, b), multiply(ctx, a, c))) <= 1e-12
        right = multiply(ctx, add(a, b), c)
        assert relative_deviation(right, add(multiply(ctx, a, c), multiply(ctx, b, c))) <= 1e-12


@pytest.mark.parametrize("lam", [1, Fraction(1, 2), 2.0, 0.3 + 0.1j])
@pytest.mark.parametrize("m", range(-5, 6))
def test_d_times_x_power_reduces_to_the_bracket(lam, m):
    ctx = AlgebraParams(lam=lam)
    reduced = reduce_mod_ideal(multiply(ctx, d, WeylElement.monomial(m)))
    assert set(reduced.exponents()) <= {m - 1}
    assert complex(reduced.coefficient(m - 1)) == pytest.approx(complex(q_integer(m, lam)), rel=1e-12, abs=1e-15)


def test_q_products_tend_to_weyl_products():
    rng = np.random.default_rng(11)
    near = AlgebraParams(lam=1 + 1e-9)
    for _ in range(10):
        a, b = random_element(rng), random_element(rng)
        assert multiply(near, a, b).max_deviation(multiply(WEYL, a, b)) < 1e-6


def test_reduce_mod_ideal():
    assert reduce_mod_ideal(element(X2d2=1, X1d1=4, X0d0=2)) == LaurentPoly({0: 2})
    assert reduce_mod_ideal(element(Xm1d0=3, X1d1=1)) == LaurentPoly({-1: 3})
    assert reduce_mod_ideal(WeylElement.zero()).is_zero()


def test_reduced_d_action():
    assert reduced_d_action(WEYL, LaurentPoly({3: 1})) == LaurentPoly({2: 3})
    q = Fraction(1, 2)
    assert reduced_d_action(AlgebraParams(lam=q), LaurentPoly({3: 1})) == LaurentPoly({2: 1 + q + q**2})
    assert reduced_d_action(WEYL, LaurentPoly({-1: 1})) == LaurentPoly({-2: -1})


def test_reduced_d_action_never_reaches_the_residue():
    rng = np.random.default_rng(3)
    for lam in (1, Fraction(1, 3), Fraction(5, 2)):
        ctx = AlgebraParams(lam=lam)
        for _ in range(25):
            coeffs = {int(m): int(rng.integers(-5, 6)) for m in rng.integers(-6, 7, size=5)}
            assert symbolic_residue(reduced_d_action(ctx, LaurentPoly(coeffs))) == 0


def test_symbolic_residue():
    assert symbolic_residue(LaurentPoly({-1: 5, 0: 2, 1: 1})) == 5
    assert symbolic_residue(LaurentPoly()) == 0


def test_symbolic_coefficient_reads_the_polynomial_part():
    w = element(X0d0=2, X1d0=-3, X3d0=7)
    assert [symbolic_coefficient(WEYL, w, k) for k in range(4)] == [2, -3, 0, 7]


def test_q_integer():
    assert q_integer(4, 1) == 4
    assert q_integer(3, Fraction(1, 2)) == Fraction(7, 4)
    assert q_integer(-1, 1) == -1
    assert q_integer(-2, Fraction(1, 2)) == -6
    assert q_integer(0, 0.3) == 0


def test_family_diagnostic_difference():
    coeffs = [1 / math.factorial(k) for k in range(11)]
    result = family_diagnostics(FormalSeriesF(coeffs=coeffs, family=SeriesFamily.difference))
    assert result.status == "consistent"
    assert result.indices == list(range(2, 11))


def test_family_diagnostic_q_small_and_classical():
    geometric = FormalSeriesF(coeffs=[2.0**-k for k in range(10)], family=SeriesFamily.q_small)
    result = family_diagnostics(geometric)
    assert result.status == "consistent"
    assert result.samples == pytest.approx([0.5] * 9)

    ones = FormalSeriesF(coeffs=[1.0] * 10, family=SeriesFamily.classical)
    assert family_diagnostics(ones).status == "inconsistent with lim = 0"


def test_family_diagnostic_edge_cases():
    trivial = FormalSeriesF(coeffs=[1.0, 2.0, 0.0, 0.0], family=SeriesFamily.classical)
    assert family_diagnostics(trivial).status == "tail vanishes (trivially in family)"
    with pytest.raises(DomainError):
        family_diagnostics(FormalSeriesF(coeffs=[1.0, 1.0], family=SeriesFamily.classical))
    with pytest.raises(ValueError):
        FormalSeriesF(coeffs=[1.0, 1.0, 1.0], family=SeriesFamily.q_large, q=0.5)
