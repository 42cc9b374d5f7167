# utils/qnumbers.py
from functools import lru_cache
from numbers import Number


def q_integer(m: int, lam: Number) -> Number:
    """
    The bracket [m]_λ = (λ^m - 1)/(λ - 1), with the limit value m at λ = 1.

    Only ring operations (and λ^-1 for negative m) are used, so exact
    Fraction coefficients stay exact.
    """
    if lam == 1:
        return m
    if m >= 0:
        return sum((lam**j for j in range(m)), 0)
    return -sum((lam ** (-j) for j in range(1, -m + 1)), 0)


@lru_cache(maxsize=None)
def binomial_table(n: int) -> tuple:
    """Row n of Pascal's triangle as exact integers."""
    row = [1]
    for k in range(n):
        row.append(row[-1] * (n - k) // (k + 1))
    return tuple(row)


def q_binomial_exponent(k: int) -> int:
    """C(k, 2), the exponent of q in the JacksonB basis."""
    return k * (k - 1) // 2
