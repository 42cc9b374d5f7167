# utils/parsing.py
"""
Parsers for the two expression languages shared by the CLI and the HTTP routes.

Weyl expressions (elements of A₀):

    expr    ::= term (("+" | "-") term)*
    term    ::= unary (("*" | "/") unary)*          "/" only by a constant
    unary   ::= "-" unary | postfix
    postfix ::= atom ("^" ["-"] integer)?
    atom    ::= number | number "i" | "X" | "Xinv" | "d" | "lambda" | "q" | "(" expr ")"

Function expressions (AnalyticFunction):

    atom    ::= number | number "i" | "t" | "pi" | "(" expr ")"
              | "exp(" expr ")" | "sin(" expr ")" | "cos(" expr ")" | "pow(" const "," expr ")"

with the same expr / term / unary / postfix layers. Whitespace is ignored.
"""

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number
from typing import Iterator, List, NamedTuple, Optional, Union

from models import function as fn
from models.function import AnalyticFunction, Domain
from models.weyl import AlgebraParams, WeylElement
from services.normal_ordering import multiply, power
from utils.errors import ParseError

MAX_EXPONENT = 64

_TOKEN_RE = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)(?P<imag>i(?![A-Za-z_]))?
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    type: str
    value: Union[str, Number]
    where: int
    text: str = ""


def tokenize(source: str, exact: bool = False) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while position < len(source):
        match = _TOKEN_RE.match(source, position)
        if match is None:
            raise ParseError(f"unexpected character {source[position]!r}", source, position)
        if match.group("number") is not None:
            text = match.group("number")
            if match.group("imag"):
                tokens.append(Token("number", complex(0, float(text)), position, match.group(0)))
            elif exact:
                tokens.append(Token("number", Fraction(text), position, text))
            elif re.fullmatch(r"\d+", text):
                tokens.append(Token("number", int(text), position, text))
            else:
                tokens.append(Token("number", float(text), position, text))
        elif match.group("name") is not None:
            tokens.append(Token("name", match.group("name"), position))
        elif match.group("op") is not None:
            tokens.append(Token("op", match.group("op"), position))
        position = match.end()
    tokens.append(Token("end", "", len(source)))
    return tokens


class _TokenStream:
    def __init__(self, source: str, exact: bool = False):
        self.source = source
        self.tokens = tokenize(source, exact)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def accept(self, value: str) -> bool:
        if self.current.type in ("op", "name") and self.current.value == value:
            self.index += 1
            return True
        return False

    def expect(self, value: str) -> Token:
        if not self.accept(value):
            raise self.error(f"expected {value!r}")
        return self.tokens[self.index - 1]

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        found = "end of input" if token.type == "end" else repr(str(token.value))
        return ParseError(f"{message}, found {found}", self.source, token.where)

    def integer_exponent(self) -> int:
        negative = self.accept("-")
        token = self.advance()
        if token.type != "number" or not isinstance(token.value, (int, Fraction)) or (
            isinstance(token.value, Fraction) and token.value.denominator != 1
        ):
            raise self.error("expected an integer exponent", token)
        value = int(token.value)
        if value > MAX_EXPONENT:
            raise ParseError(f"exponent overflow ({value} > {MAX_EXPONENT})", self.source, token.where)
        return -value if negative else value


# Weyl expressions


@dataclass(frozen=True)
class WNum:
    value: Number
    # source spelling, reused when printing so parse(print(tree)) == tree
    text: str = field(default="", compare=False)


@dataclass(frozen=True)
class WGen:
    name: str


@dataclass(frozen=True)
class WBin:
    op: str
    left: "WeylExpr"
    right: "WeylExpr"


@dataclass(frozen=True)
class WNeg:
    arg: "WeylExpr"


@dataclass(frozen=True)
class WPow:
    base: "WeylExpr"
    exponent: int


WeylExpr = Union[WNum, WGen, WBin, WNeg, WPow]

_GENERATORS = {"X", "Xinv", "d", "lambda", "q"}


class _WeylParser(_TokenStream):
    def parse(self) -> WeylExpr:
        tree = self.expr()
        if self.current.type != "end":
            raise self.error("unexpected trailing input")
        return tree

    def expr(self) -> WeylExpr:
        left = self.term()
        while self.current.type == "op" and self.current.value in "+-":
            op = self.advance().value
            left = WBin(op, left, self.term())
        return left

    def term(self) -> WeylExpr:
        left = self.unary()
        while self.current.type == "op" and self.current.value in "*/":
            op = self.advance().value
            left = WBin(op, left, self.unary())
        return left

    def unary(self) -> WeylExpr:
        if self.accept("-"):
            return WNeg(self.unary())
        return self.postfix()

    def postfix(self) -> WeylExpr:
        base = self.atom()
        if self.accept("^"):
            return WPow(base, self.integer_exponent())
        return base

    def atom(self) -> WeylExpr:
        token = self.current
        if token.type == "number":
            self.advance()
            return WNum(token.value, token.text)
        if token.type == "name":
            if token.value not in _GENERATORS:
                raise self.error("unknown symbol")
            self.advance()
            return WGen(token.value)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error("expected a number, X, Xinv, d or '('")


def parse_weyl_expr(text: str, exact: bool = False) -> WeylExpr:
    """Parse to the syntax tree; ``exact`` reads decimals as Fractions."""
    return _WeylParser(text, exact).parse()


def _print_number(node: WNum) -> str:
    if node.text:
        return node.text
    if isinstance(node.value, complex):
        return f"{node.value.imag!r}i"
    return repr(node.value)


def print_weyl_expr(tree: WeylExpr) -> str:
    """Fully parenthesised rendering; parse(print(tree)) == tree."""
    if isinstance(tree, WNum):
        return _print_number(tree)
    if isinstance(tree, WGen):
        return tree.name
    if isinstance(tree, WNeg):
        return f"(-{print_weyl_expr(tree.arg)})"
    if isinstance(tree, WPow):
        return f"{_print_pow_base(tree.base)}^{tree.exponent}"
    return f"({print_weyl_expr(tree.left)} {tree.op} {print_weyl_expr(tree.right)})"


def _print_pow_base(base: WeylExpr) -> str:
    text = print_weyl_expr(base)
    if isinstance(base, (WGen, WNum)) or text.startswith("("):
        return text
    return f"({text})"


def _reciprocal(value: Number) -> Number:
    if isinstance(value, (int, Fraction)):
        return Fraction(1) / value
    return 1 / value


def evaluate_weyl_expr(tree: WeylExpr, ctx: AlgebraParams) -> WeylElement:
    if isinstance(tree, WNum):
        return WeylElement.constant(tree.value)
    if isinstance(tree, WGen):
        if tree.name in ("lambda", "q"):
            return WeylElement.constant(ctx.lam)
        return {"X": WeylElement.X, "Xinv": WeylElement.Xinv, "d": WeylElement.d}[tree.name]()
    if isinstance(tree, WNeg):
        return -evaluate_weyl_expr(tree.arg, ctx)
    if isinstance(tree, WPow):
        base = evaluate_weyl_expr(tree.base, ctx)
        if tree.exponent >= 0:
            return power(ctx, base, tree.exponent)
        if len(base) != 1 or next(iter(base.terms))[1] != 0:
            raise ParseError("negative powers are only defined for c*X^m")
        (m, _), c = next(iter(base.terms.items()))
        n = -tree.exponent
        return WeylElement.monomial(-m * n, 0, _reciprocal(c) ** n)
    left = evaluate_weyl_expr(tree.left, ctx)
    right = evaluate_weyl_expr(tree.right, ctx)
    if tree.op == "+":
        return left + right
    if tree.op == "-":
        return left - right
    if tree.op == "*":
        return multiply(ctx, left, right)
    if not right.is_constant() or right.is_zero():
        raise ParseError("division is only by a nonzero constant")
    return left.scale(_reciprocal(right.coefficient(0, 0)))


def parse_weyl(text: str, ctx: Optional[AlgebraParams] = None, exact: bool = False) -> WeylElement:
    """Parse and normal-order a Weyl expression under the configured λ."""
    ctx = ctx or AlgebraParams()
    return evaluate_weyl_expr(parse_weyl_expr(text, exact), ctx)


# function expressions

_UNARY_FUNCTIONS = {"exp": fn.Exp, "sin": fn.Sin, "cos": fn.Cos}


class _FunctionParser(_TokenStream):
    def parse(self) -> fn.Node:
        tree = self.expr()
        if self.current.type != "end":
            raise self.error("unexpected trailing input")
        return tree

    def expr(self) -> fn.Node:
        left = self.term()
        while self.current.type == "op" and self.current.value in "+-":
            op = self.advance().value
            right = self.term()
            left = fn.add(left, right) if op == "+" else fn.sub(left, right)
        return left

    def term(self) -> fn.Node:
        left = self.unary()
        while self.current.type == "op" and self.current.value in "*/":
            token = self.advance()
            right = self.unary()
            if token.value == "*":
                left = fn.mul(left, right)
            else:
                try:
                    left = fn.div(left, right)
                except ArithmeticError:
                    raise ParseError("division by the constant 0", self.source, token.where)
        return left

    def unary(self) -> fn.Node:
        if self.accept("-"):
            return fn.neg(self.unary())
        return self.postfix()

    def postfix(self) -> fn.Node:
        base = self.atom()
        if self.accept("^"):
            return fn.power(base, self.integer_exponent())
        return base

    def atom(self) -> fn.Node:
        token = self.current
        if token.type == "number":
            self.advance()
            return fn.const(token.value)
        if token.type == "name":
            name = token.value
            self.advance()
            if name == "t":
                return fn.Var()
            if name == "pi":
                return fn.const(math.pi)
            if name in _UNARY_FUNCTIONS:
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return _UNARY_FUNCTIONS[name](inner)
            if name == "pow":
                self.expect("(")
                base_token = self.current
                base = self.expr()
                if not isinstance(base, fn.Const):
                    raise self.error("the base of pow must be a constant", base_token)
                self.expect(",")
                exponent = self.expr()
                self.expect(")")
                if base.value == 0:
                    raise ParseError("the base of pow must be nonzero", self.source, base_token.where)
                return fn.ConstPow(base.value, exponent)
            raise ParseError(f"unknown symbol {name!r}", self.source, token.where)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error("expected a number, t, a function call or '('")


def parse_function(text: str, domain: Domain = Domain.plane) -> AnalyticFunction:
    return AnalyticFunction(_FunctionParser(text).parse(), domain)


def iter_points(text: str) -> Iterator[complex]:
    """Comma-separated constants, e.g. "0, 1.5, (2+1i)"."""
    depth, start = 0, 0
    for index, char in enumerate(text + ","):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char == "," and depth == 0:
            piece = text[start:index].strip()
            start = index + 1
            if not piece:
                continue
            node = _FunctionParser(piece).parse()
            if not isinstance(node, fn.Const):
                raise ParseError("expected a constant", piece, 0)
            yield node.value
