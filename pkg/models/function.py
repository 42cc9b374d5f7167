"""
Expression trees for analytic functions of one complex variable t.

Evaluation is vectorised through numpy: every evaluator accepts a scalar or an
array of points and returns complex values of the same shape. Differentiation
is symbolic and closed on the node set; the smart constructors below fold
constants so repeated derivatives stay small.
"""

import cmath
from dataclasses import dataclass
from enum import Enum
from functools import singledispatch
from numbers import Number
from typing import Union

import numpy as np

from utils.errors import DomainError, PoleError


class Domain(str, Enum):
    plane = "C"
    punctured = "C*"


class Node:
    precedence = 100


@dataclass(frozen=True)
class Const(Node):
    value: complex


@dataclass(frozen=True)
class Var(Node):
    pass


@dataclass(frozen=True)
class Add(Node):
    left: Node
    right: Node
    precedence = 1


@dataclass(frozen=True)
class Sub(Node):
    left: Node
    right: Node
    precedence = 1


@dataclass(frozen=True)
class Neg(Node):
    arg: Node
    precedence = 3


@dataclass(frozen=True)
class Mul(Node):
    left: Node
    right: Node
    precedence = 2


@dataclass(frozen=True)
class Div(Node):
    left: Node
    right: Node
    precedence = 2


@dataclass(frozen=True)
class Pow(Node):
    """base ^ n for an integer n."""

    base: Node
    exponent: int
    precedence = 4


@dataclass(frozen=True)
class Exp(Node):
    arg: Node


@dataclass(frozen=True)
class Sin(Node):
    arg: Node


@dataclass(frozen=True)
class Cos(Node):
    arg: Node


@dataclass(frozen=True)
class ConstPow(Node):
    """b^arg for a nonzero constant b, realised as exp(arg·Log b) with the principal log."""

    base: complex
    arg: Node

    def __post_init__(self):
        if self.base == 0:
            raise DomainError("the base of pow(b, ·) must be nonzero")


# smart constructors


def const(value: Number) -> Const:
    return Const(complex(value))


ZERO = Const(0j)
ONE = Const(1 + 0j)


def _is_const(node: Node, value=None) -> bool:
    return isinstance(node, Const) and (value is None or node.value == value)


def add(a: Node, b: Node) -> Node:
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    return Add(a, b)


def sub(a: Node, b: Node) -> Node:
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return neg(b)
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    return Sub(a, b)


def neg(a: Node) -> Node:
    if _is_const(a):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def mul(a: Node, b: Node) -> Node:
    if _is_const(a, 0) or _is_const(b, 0):
        return ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    if _is_const(b):
        return Mul(b, a)
    return Mul(a, b)


def div(a: Node, b: Node) -> Node:
    if _is_const(b, 0):
        raise PoleError("division by the constant 0")
    if _is_const(a, 0):
        return ZERO
    if _is_const(b, 1):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value / b.value)
    return Div(a, b)


def power(base: Node, n: int) -> Node:
    if n == 0:
        return ONE
    if n == 1:
        return base
    if _is_const(base):
        if base.value == 0 and n < 0:
            raise PoleError("negative power of the constant 0")
        return Const(base.value**n)
    return Pow(base, n)


# evaluation


def _pole_check(denominator: np.ndarray, t: np.ndarray) -> None:
    hits = denominator == 0
    if np.any(hits):
        raise PoleError(point=complex(np.broadcast_to(t, hits.shape)[hits].flat[0]))


@singledispatch
def evaluate_node(node: Node, t: np.ndarray) -> np.ndarray:
    raise NotImplementedError(f"Cannot evaluate a {type(node).__name__}")


@evaluate_node.register(Const)
def _(node, t):
    return np.full(t.shape, node.value, dtype=complex)


@evaluate_node.register(Var)
def _(node, t):
    return t


@evaluate_node.register(Add)
def _(node, t):
    return evaluate_node(node.left, t) + evaluate_node(node.right, t)


@evaluate_node.register(Sub)
def _(node, t):
    return evaluate_node(node.left, t) - evaluate_node(node.right, t)


@evaluate_node.register(Neg)
def _(node, t):
    return -evaluate_node(node.arg, t)


@evaluate_node.register(Mul)
def _(node, t):
    return evaluate_node(node.left, t) * evaluate_node(node.right, t)


@evaluate_node.register(Div)
def _(node, t):
    denominator = evaluate_node(node.right, t)
    _pole_check(denominator, t)
    return evaluate_node(node.left, t) / denominator


@evaluate_node.register(Pow)
def _(node, t):
    base = evaluate_node(node.base, t)
    if node.exponent < 0:
        _pole_check(base, t)
        return 1.0 / base ** (-node.exponent)
    return base**node.exponent


@evaluate_node.register(Exp)
def _(node, t):
    return np.exp(evaluate_node(node.arg, t))


@evaluate_node.register(Sin)
def _(node, t):
    return np.sin(evaluate_node(node.arg, t))


@evaluate_node.register(Cos)
def _(node, t):
    return np.cos(evaluate_node(node.arg, t))


@evaluate_node.register(ConstPow)
def _(node, t):
    return np.exp(evaluate_node(node.arg, t) * cmath.log(node.base))


# differentiation


@singledispatch
def differentiate(node: Node) -> Node:
    raise NotImplementedError(f"Cannot differentiate a {type(node).__name__}")


@differentiate.register(Const)
def _(node):
    return ZERO


@differentiate.register(Var)
def _(node):
    return ONE


@differentiate.register(Add)
def _(node):
    return add(differentiate(node.left), differentiate(node.right))


@differentiate.register(Sub)
def _(node):
    return sub(differentiate(node.left), differentiate(node.right))


@differentiate.register(Neg)
def _(node):
    return neg(differentiate(node.arg))


@differentiate.register(Mul)
def _(node):
    return add(
        mul(differentiate(node.left), node.right),
        mul(node.left, differentiate(node.right)),
    )


@differentiate.register(Div)
def _(node):
    numerator = sub(
        mul(differentiate(node.left), node.right),
        mul(node.left, differentiate(node.right)),
    )
    return div(numerator, power(node.right, 2))


@differentiate.register(Pow)
def _(node):
    inner = differentiate(node.base)
    return mul(mul(const(node.exponent), power(node.base, node.exponent - 1)), inner)


@differentiate.register(Exp)
def _(node):
    return mul(node, differentiate(node.arg))


@differentiate.register(Sin)
def _(node):
    return mul(Cos(node.arg), differentiate(node.arg))


@differentiate.register(Cos)
def _(node):
    return neg(mul(Sin(node.arg), differentiate(node.arg)))


@differentiate.register(ConstPow)
def _(node):
    return mul(mul(const(cmath.log(node.base)), node), differentiate(node.arg))


# printing in the shared function grammar


def _format_const(value: complex) -> str:
    from utils.formatting import format_complex_literal

    return format_complex_literal(value)


@singledispatch
def render(node: Node) -> str:
    raise NotImplementedError(type(node).__name__)


@render.register(Const)
def _(node):
    return _format_const(node.value)


@render.register(Var)
def _(node):
    return "t"


def _wrap(child: Node, parent_precedence: int, strict: bool = False) -> str:
    text = render(child)
    needs = child.precedence < parent_precedence or (strict and child.precedence == parent_precedence)
    if isinstance(child, Const) and text.startswith("-") and parent_precedence > 1:
        needs = True
    return f"({text})" if needs else text


@render.register(Add)
def _(node):
    return f"{_wrap(node.left, 1)} + {_wrap(node.right, 1)}"


@render.register(Sub)
def _(node):
    return f"{_wrap(node.left, 1)} - {_wrap(node.right, 1, strict=True)}"


@render.register(Neg)
def _(node):
    return f"-{_wrap(node.arg, 3)}"


@render.register(Mul)
def _(node):
    return f"{_wrap(node.left, 2)}*{_wrap(node.right, 2)}"


@render.register(Div)
def _(node):
    return f"{_wrap(node.left, 2)}/{_wrap(node.right, 2, strict=True)}"


@render.register(Pow)
def _(node):
    return f"{_wrap(node.base, 5)}^{node.exponent}"


@render.register(Exp)
def _(node):
    return f"exp({render(node.arg)})"


@render.register(Sin)
def _(node):
    return f"sin({render(node.arg)})"


@render.register(Cos)
def _(node):
    return f"cos({render(node.arg)})"


@render.register(ConstPow)
def _(node):
    return f"pow({_format_const(node.base)},{render(node.arg)})"


def is_constant_node(node: Node) -> bool:
    if isinstance(node, Var):
        return False
    if isinstance(node, Const):
        return True
    if isinstance(node, ConstPow):
        return is_constant_node(node.arg)
    children = [getattr(node, name) for name in ("left", "right", "arg", "base") if hasattr(node, name)]
    return all(is_constant_node(child) for child in children if isinstance(child, Node))


class AnalyticFunction:
    """
    An immutable expression tree together with its domain (ℂ or ℂ*).

    Calling the function evaluates it; scalars give a Python complex, arrays
    give a complex ndarray.
    """

    __slots__ = ("node", "domain")

    def __init__(self, node: Node, domain: Domain = Domain.plane):
        object.__setattr__(self, "node", node)
        object.__setattr__(self, "domain", Domain(domain))

    def __setattr__(self, name, value):
        raise AttributeError("AnalyticFunction is immutable")

    @classmethod
    def variable(cls, domain: Domain = Domain.plane) -> "AnalyticFunction":
        return cls(Var(), domain)

    @classmethod
    def constant(cls, value: Number, domain: Domain = Domain.plane) -> "AnalyticFunction":
        return cls(const(value), domain)

    def __call__(self, t):
        return evaluate(self, t)

    def derivative(self) -> "AnalyticFunction":
        return AnalyticFunction(differentiate(self.node), self.domain)

    def is_constant(self) -> bool:
        return is_constant_node(self.node)

    # algebra on trees

    def _lift(self, other) -> "AnalyticFunction":
        if isinstance(other, AnalyticFunction):
            return other
        if isinstance(other, Number):
            return AnalyticFunction(const(other), self.domain)
        raise TypeError(f"cannot combine AnalyticFunction with {type(other).__name__}")

    def _domain_with(self, other: "AnalyticFunction") -> Domain:
        if Domain.punctured in (self.domain, other.domain):
            return Domain.punctured
        return Domain.plane

    def _binary(self, other, builder, reflected=False) -> "AnalyticFunction":
        other = self._lift(other)
        left, right = (other, self) if reflected else (self, other)
        return AnalyticFunction(builder(left.node, right.node), self._domain_with(other))

    def __add__(self, other):
        return self._binary(other, add)

    def __radd__(self, other):
        return self._binary(other, add, reflected=True)

    def __sub__(self, other):
        return self._binary(other, sub)

    def __rsub__(self, other):
        return self._binary(other, sub, reflected=True)

    def __mul__(self, other):
        return self._binary(other, mul)

    def __rmul__(self, other):
        return self._binary(other, mul, reflected=True)

    def __truediv__(self, other):
        return self._binary(other, div)

    def __rtruediv__(self, other):
        return self._binary(other, div, reflected=True)

    def __neg__(self):
        return AnalyticFunction(neg(self.node), self.domain)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        return AnalyticFunction(power(self.node, n), self.domain)

    def __eq__(self, other):
        if not isinstance(other, AnalyticFunction):
            return NotImplemented
        return self.node == other.node and self.domain == other.domain

    def __hash__(self):
        return hash((self.node, self.domain))

    def __str__(self):
        return render(self.node)

    def __repr__(self):
        return f"AnalyticFunction({render(self.node)!r}, domain={self.domain.value!r})"


def exp(f: AnalyticFunction) -> AnalyticFunction:
    return AnalyticFunction(Exp(f.node), f.domain)


def sin(f: AnalyticFunction) -> AnalyticFunction:
    return AnalyticFunction(Sin(f.node), f.domain)


def cos(f: AnalyticFunction) -> AnalyticFunction:
    return AnalyticFunction(Cos(f.node), f.domain)


def const_pow(base: Number, f: AnalyticFunction) -> AnalyticFunction:
    return AnalyticFunction(ConstPow(complex(base), f.node), f.domain)


def evaluate(f: AnalyticFunction, t: Union[Number, np.ndarray]):
    """Evaluate f at a point or an array of points."""
    scalar = np.ndim(t) == 0
    points = np.asarray(t, dtype=complex)
    if f.domain == Domain.punctured and np.any(points == 0):
        raise DomainError("t = 0 lies outside the punctured plane ℂ*")
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        values = evaluate_node(f.node, points)
    values = np.broadcast_to(values, points.shape).astype(complex)
    return complex(values) if scalar else values
