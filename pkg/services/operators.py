# services/operators.py
"""
The module structures: X, X^-1 and ∂ acting on functions under each ModelSemantics.

    Classical           (Xf)(t) = t f(t)         (∂f)(t) = f'(t)
    ForwardDifference   (Xf)(t) = t f(t-1)       (∂f)(t) = f(t+1) - f(t)
    JacksonA            (Xf)(t) = (t-1) f(qt)    (∂f)(t) = (f(t) - f(t/q)) / (t - t/q)
    JacksonB            (Xf)(t) = t f(qt)        (∂f)(t) = (f(t) - f(t/q)) / (t - t/q)

Classical actions keep AnalyticFunction inputs symbolic. Every other action
returns a closure over its (immutable) argument; closures evaluate on scalars
or numpy arrays.
"""

import logging
from numbers import Number
from typing import Callable, Dict, List, Tuple, Union

import numpy as np

from models.function import AnalyticFunction
from models.semantics import ModelKind, ModelSemantics
from models.weyl import LaurentPoly, WeylElement
from utils.errors import DomainError, PoleError

logger = logging.getLogger(__name__)

Evaluable = Callable[[Union[Number, np.ndarray]], Union[complex, np.ndarray]]


def call(f: Evaluable, t) -> np.ndarray:
    """Evaluate any evaluable function on an array of points."""
    points = np.asarray(t, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        values = f(points)
    return np.broadcast_to(np.asarray(values, dtype=complex), points.shape)


def checked_divide(numerator: np.ndarray, denominator: np.ndarray, t: np.ndarray) -> np.ndarray:
    hits = denominator == 0
    if np.any(hits):
        raise PoleError(point=complex(np.broadcast_to(t, hits.shape)[hits].flat[0]))
    return numerator / denominator


class LayeredFunction:
    """A closure over immutable state that keeps the scalar-in / scalar-out contract."""

    __slots__ = ("_fn", "label")

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray], label: str):
        self._fn = fn
        self.label = label

    def __call__(self, t):
        scalar = np.ndim(t) == 0
        points = np.asarray(t, dtype=complex)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            values = np.broadcast_to(np.asarray(self._fn(points), dtype=complex), points.shape)
        return complex(values) if scalar else values

    def __repr__(self) -> str:
        return f"LayeredFunction({self.label})"


def _label(f: Evaluable) -> str:
    if isinstance(f, LayeredFunction):
        return f.label
    if isinstance(f, AnalyticFunction):
        return str(f)
    return getattr(f, "__name__", "f")


def actX(s: ModelSemantics, f: Evaluable) -> Evaluable:
    kind = s.kind
    if kind == ModelKind.classical:
        if isinstance(f, AnalyticFunction):
            return AnalyticFunction.variable(f.domain) * f
        return LayeredFunction(lambda t: t * call(f, t), f"X({_label(f)})")
    if kind == ModelKind.forward_difference:
        return LayeredFunction(lambda t: t * call(f, t - 1.0), f"X({_label(f)})")
    q = s.q
    if kind == ModelKind.jackson_a:
        return LayeredFunction(lambda t: (t - 1.0) * call(f, q * t), f"X({_label(f)})")
    return LayeredFunction(lambda t: t * call(f, q * t), f"X({_label(f)})")


def actXinv(s: ModelSemantics, f: Evaluable) -> Evaluable:
    """The inverse action, obtained by solving X g = f for g."""
    kind = s.kind
    if kind == ModelKind.classical:
        if isinstance(f, AnalyticFunction):
            return f / AnalyticFunction.variable(f.domain)
        return LayeredFunction(lambda t: checked_divide(call(f, t), t, t), f"Xinv({_label(f)})")
    if kind == ModelKind.forward_difference:
        return LayeredFunction(
            lambda t: checked_divide(call(f, t + 1.0), t + 1.0, t), f"Xinv({_label(f)})"
        )
    q = s.q
    if kind == ModelKind.jackson_a:
        return LayeredFunction(
            lambda t: checked_divide(call(f, t / q), t / q - 1.0, t), f"Xinv({_label(f)})"
        )
    return LayeredFunction(lambda t: checked_divide(call(f, t / q), t / q, t), f"Xinv({_label(f)})")


def actD(s: ModelSemantics, f: Evaluable) -> Evaluable:
    kind = s.kind
    if kind == ModelKind.classical:
        if not isinstance(f, AnalyticFunction):
            raise DomainError("the classical ∂ differentiates symbolically and needs an AnalyticFunction")
        return f.derivative()
    if kind == ModelKind.forward_difference:
        return LayeredFunction(lambda t: call(f, t + 1.0) - call(f, t), f"d({_label(f)})")
    q = s.q
    return LayeredFunction(
        lambda t: checked_divide(call(f, t) - call(f, t / q), t - t / q, t), f"d({_label(f)})"
    )


def act_monomial(s: ModelSemantics, m: int, f: Evaluable) -> Evaluable:
    step = actX if m > 0 else actXinv
    for _ in range(abs(m)):
        f = step(s, f)
    return f


def basis_eval(s: ModelSemantics, k: int, t):
    """
    Closed form of φ_k = X^k·p:

        Classical           t^k p(t)
        ForwardDifference   t(t-1)...(t-k+1) p(t-k)
        JacksonA            (t-1)(qt-1)...(q^(k-1)t-1) p(q^k t)
        JacksonB            q^C(k,2) t^k p(q^k t)
    """
    if k < 0:
        raise DomainError(f"basis index must be nonnegative, got {k}")
    scalar = np.ndim(t) == 0
    points = np.asarray(t, dtype=complex)
    p = s.generator
    kind = s.kind
    if kind == ModelKind.classical:
        values = points**k * call(p, points)
    elif kind == ModelKind.forward_difference:
        product = np.ones_like(points)
        for j in range(k):
            product = product * (points - j)
        values = product * call(p, points - k)
    elif kind == ModelKind.jackson_a:
        product = np.ones_like(points)
        for j in range(k):
            product = product * (s.q**j * points - 1.0)
        values = product * call(p, s.q**k * points)
    else:
        values = s.q ** (k * (k - 1) // 2) * points**k * call(p, s.q**k * points)
    return complex(values) if scalar else values


class BasisFamily:
    """k ↦ φ_k = X^k·p as evaluable functions for one semantics."""

    def __init__(self, semantics: ModelSemantics):
        self.semantics = semantics

    @property
    def tag(self):
        return self.semantics.basis

    def __call__(self, k: int) -> Evaluable:
        s = self.semantics
        return LayeredFunction(lambda t: basis_eval(s, k, t), f"phi_{k}")

    def evaluate(self, k: int, t):
        return basis_eval(self.semantics, k, t)

    def iterated(self, k: int) -> Evaluable:
        """φ_k built as the k-fold X action on p, for cross-checking the closed form."""
        return act_monomial(self.semantics, k, self.semantics.generator)


def _sum(terms: List[Tuple[Number, Evaluable]], label: str) -> Evaluable:
    if not terms:
        return LayeredFunction(lambda t: np.zeros_like(t), "0")
    if all(isinstance(fn, AnalyticFunction) for _, fn in terms):
        total = None
        for c, fn in terms:
            piece = fn if c == 1 else fn * complex(c)
            total = piece if total is None else total + piece
        return total
    frozen = tuple(terms)
    return LayeredFunction(lambda t: sum(complex(c) * call(fn, t) for c, fn in frozen), label)


def interpret(s: ModelSemantics, w: Union[WeylElement, LaurentPoly], f: Evaluable) -> Evaluable:
    """
    Apply Σ c_{m,n} X^m ∂^n to f termwise. With w = Σ a_k X^k and f = p this
    is the evaluation map sending a class to its series in the basis φ_k.
    """
    from utils.formatting import format_weyl

    if isinstance(w, LaurentPoly):
        w = w.to_element()
    if w.is_constant():
        c = w.coefficient(0, 0)
        if c == 1:
            return f
    derivatives: Dict[int, Evaluable] = {0: f}
    top = max((n for _, n in w.terms), default=0)
    for n in range(1, top + 1):
        derivatives[n] = actD(s, derivatives[n - 1])
    terms = []
    for (m, n), c in w.sorted_terms():
        terms.append((c, act_monomial(s, m, derivatives[n])))
    return _sum(terms, f"[{format_weyl(w)}]({_label(f)})")

