# services/coefficient_service.py
"""
Coefficient extraction in the basis φ_k = X^k·p, by two independent routes:

* oracles: Newton differences, triangular q-interpolation and Taylor coefficients;
* residues: c·Res(X^-(k+1) f / p), realized as a weighted vertical-line integral
  (forward differences) or a trapezoid rule on a circle (Jackson, classical).
"""

import logging
import math
import threading
from numbers import Number
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import integrate

from models.contour import Calibration, Circle, ContourSpec, VerticalLine
from models.function import AnalyticFunction, Domain
from models.semantics import ModelKind, ModelSemantics
from pydantic_schemas.coefficient import (
    BoundCheck,
    CoefficientMethod,
    CoefficientSeries,
    ExactnessProbe,
    QuadratureResult,
)
from services.operators import (
    Evaluable,
    LayeredFunction,
    actD,
    actXinv,
    act_monomial,
    basis_eval,
    call,
    checked_divide,
)
from utils.errors import CalibrationError, ContourError, DomainError, PoleError
from utils.qnumbers import binomial_table, q_binomial_exponent

logger = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)
NEWTON_CANCELLATION_CAP = 25
TAIL_TOLERANCE = 1e-12
CALIBRATION_FLOOR = 1e-14
EXPERIMENTAL_NOTE = (
    "experimental: the forward-difference residue is a measured functional; "
    "its vanishing on difference images is not assumed"
)


def _series(
    values: Sequence[complex],
    errors: Sequence[float],
    s: ModelSemantics,
    method: CoefficientMethod,
    warnings: Optional[List[str]] = None,
) -> CoefficientSeries:
    return CoefficientSeries(
        values=[complex(v) for v in values],
        errors=[float(e) for e in errors],
        kind=s.kind,
        basis=s.basis,
        method=method,
        warnings=warnings or [],
    )


def _check_truncation(K: int) -> None:
    if K < 0:
        raise DomainError(f"truncation K must be nonnegative, got {K}")


def _finite_values(values: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(values)):
        raise PoleError(f"non-finite value while evaluating {what}")


# oracles


def newton_oracle(f: Evaluable, K: int, allow_cancellation: bool = False) -> CoefficientSeries:
    """
    a_k = Δ^k f(0) / k! from the values f(0..K), summed with math.fsum.

    The alternating binomial sums lose about k bits; K above 25 is refused
    unless ``allow_cancellation`` is set, in which case the series carries a warning.
    """
    _check_truncation(K)
    warnings: List[str] = []
    if K > NEWTON_CANCELLATION_CAP:
        message = f"K = {K} > {NEWTON_CANCELLATION_CAP}: double-precision cancellation in Δ^k f(0)"
        if not allow_cancellation:
            raise DomainError(f"{message}; pass allow_cancellation to proceed")
        logger.warning(message)
        warnings.append(message)

    samples = call(f, np.arange(K + 1, dtype=float))
    _finite_values(samples, "f at 0..K")
    values: List[complex] = []
    errors: List[float] = []
    for k in range(K + 1):
        row = binomial_table(k)
        terms = [(-1) ** (k - j) * row[j] * samples[j] for j in range(k + 1)]
        factorial = math.factorial(k)
        total = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
        values.append(total / factorial)
        errors.append(EPS * math.fsum(abs(t) for t in terms) / factorial)
    return _series(values, errors, ModelSemantics(kind=ModelKind.forward_difference), CoefficientMethod.oracle, warnings)


def q_oracle(f: Evaluable, q: Number, K: int) -> CoefficientSeries:
    """
    Forward substitution on f(q^-j) = Σ_{k<=j} a_k φ_k(q^-j); φ_k vanishes at
    q^-j for every k > j, so the system is lower triangular.
    """
    _check_truncation(K)
    s = ModelSemantics(kind=ModelKind.jackson_a, q=q)
    nodes = s.q ** -np.arange(K + 1, dtype=float)
    samples = call(f, nodes)
    _finite_values(samples, "f at the q-nodes")
    table = np.array([[basis_eval(s, k, t) for k in range(K + 1)] for t in nodes])

    values: List[complex] = []
    errors: List[float] = []
    for j in range(K + 1):
        diagonal = table[j, j]
        if diagonal == 0:
            raise DomainError(f"singular diagonal φ_{j}(q^-{j}) = 0; |q| must differ from 0 and 1")
        known = [values[k] * table[j, k] for k in range(j)]
        residual = samples[j] - sum(known, 0j)
        values.append(complex(residual / diagonal))
        scale = abs(samples[j]) + sum(abs(term) for term in known)
        errors.append(EPS * (j + 1) * scale / abs(diagonal))
    return _series(values, errors, s, CoefficientMethod.oracle)


def taylor_oracle(f: AnalyticFunction, K: int) -> CoefficientSeries:
    """a_k = f^(k)(0) / k! by repeated symbolic differentiation."""
    _check_truncation(K)
    current = AnalyticFunction(f.node, Domain.plane)
    values: List[complex] = []
    for k in range(K + 1):
        values.append(complex(current(0.0)) / math.factorial(k))
        current = current.derivative()
    if not all(np.isfinite(v) for v in values):
        raise PoleError("f is not analytic at 0")
    errors = [EPS * abs(v) for v in values]
    return _series(values, errors, ModelSemantics(kind=ModelKind.classical), CoefficientMethod.oracle)


def jackson_b_oracle(f: AnalyticFunction, q: Number, K: int) -> CoefficientSeries:
    """
    Monomial route for (Xf)(t) = t f(qt): φ_k = q^C(k,2) t^k, so
    a_k = [t^k] f / q^C(k,2).
    """
    s = ModelSemantics(kind=ModelKind.jackson_b, q=q)
    taylor = taylor_oracle(f, K)
    values, errors = [], []
    for k, (value, error) in enumerate(zip(taylor.values, taylor.errors)):
        scale = s.q ** q_binomial_exponent(k)
        values.append(value / scale)
        errors.append(error / abs(scale))
    return _series(values, errors, s, CoefficientMethod.oracle)


# contour integrals


def _weight(spec: VerticalLine, t: np.ndarray) -> np.ndarray:
    return np.exp(-spec.sigma * np.cos(2 * np.pi * t))


def _line_nodes(spec: VerticalLine) -> Tuple[np.ndarray, np.ndarray]:
    steps = max(2, int(round(2 * spec.Y / spec.h)))
    y = np.linspace(-spec.Y, spec.Y, steps + 1)
    return y, spec.a + 1j * y


def barnes_residue(g: Evaluable, spec: VerticalLine) -> QuadratureResult:
    """
    Principal value i·∫_{-Y}^{Y} g(a+iy) e^(-σcos(2π(a+iy))) dy by the trapezoid rule.

    The integrand magnitude at ±iY is reported as ``tail``; above 1e-12 the
    result is flagged as a decay violation.
    """
    if not isinstance(spec, VerticalLine):
        raise ContourError("barnes_residue needs a VerticalLine contour")
    y, t = _line_nodes(spec)
    integrand = call(g, t) * _weight(spec, t)
    if not np.all(np.isfinite(integrand)):
        raise PoleError(f"non-finite integrand on Re t = {spec.a}")
    value = 1j * integrate.trapezoid(integrand, y)
    coarse = 1j * integrate.trapezoid(integrand[::2], y[::2]) if len(y) % 2 == 1 else value
    tail = float(max(abs(integrand[0]), abs(integrand[-1])))
    result = QuadratureResult(value=complex(value), error=float(abs(value - coarse)), tail=tail)
    if tail > TAIL_TOLERANCE:
        message = f"decay violation: |integrand| = {tail:.3g} at Im t = ±{spec.Y}"
        logger.warning(message)
        result = result.model_copy(update={"flagged": True, "warnings": [message]})
    return result


def circle_residue(g: Evaluable, spec: Circle) -> QuadratureResult:
    """(1/N) Σ_j g(r e^(2πij/N)) r e^(2πij/N), with the N/2-node rule as error indicator."""
    if not isinstance(spec, Circle):
        raise ContourError("circle_residue needs a Circle contour")
    z = spec.r * np.exp(2j * np.pi * np.arange(spec.N) / spec.N)
    samples = call(g, z) * z
    if not np.all(np.isfinite(samples)):
        raise PoleError(f"pole of the integrand on |t| = {spec.r}")
    value = complex(np.mean(samples))
    coarse = complex(np.mean(samples[::2])) if spec.N % 2 == 0 else value
    return QuadratureResult(value=value, error=abs(value - coarse))


def numeric_residue(g: Evaluable, spec: ContourSpec) -> QuadratureResult:
    if isinstance(spec, VerticalLine):
        return barnes_residue(g, spec)
    return circle_residue(g, spec)


# calibration and extraction


def _check_contour(s: ModelSemantics, spec: ContourSpec, k: int = 0) -> None:
    if s.kind == ModelKind.jackson_b:
        raise DomainError("residue extraction is not offered for the qb structure; use the jackson_b oracle")
    if s.kind == ModelKind.forward_difference:
        if not isinstance(spec, VerticalLine):
            raise ContourError("the delta structure integrates along a VerticalLine")
        return
    if not isinstance(spec, Circle):
        raise ContourError(f"the {s.kind.value} structure integrates over a Circle")
    if s.kind == ModelKind.jackson_a:
        modulus = abs(s.q)
        if modulus < 1 and spec.r <= 1:
            raise ContourError("JacksonA with |q| < 1 needs r > 1")
        if modulus > 1 and spec.r <= modulus ** (k + 1):
            raise ContourError(f"JacksonA with |q| > 1 needs r > |q|^{k + 1} to enclose the poles at q^j")


def _divided_by_generator(s: ModelSemantics, h: Evaluable, label: str) -> Evaluable:
    if s.generator.is_constant():
        c = complex(s.generator(1.0))
        if c == 1:
            return h
        return LayeredFunction(lambda t: call(h, t) / c, label)
    p = s.generator
    return LayeredFunction(lambda t: checked_divide(call(h, t), call(p, t), t), label)


def residue_integrand(s: ModelSemantics, f: Evaluable, k: int) -> Evaluable:
    """X^-(k+1) f divided by p."""
    if k < 0:
        raise DomainError(f"coefficient index must be nonnegative, got {k}")
    return _divided_by_generator(s, act_monomial(s, -(k + 1), f), f"Xinv^{k + 1}(f)/p")


_calibration_cache: Dict[Tuple[ModelSemantics, ContourSpec], Calibration] = {}
_calibration_lock = threading.Lock()


def calibrate(s: ModelSemantics, spec: ContourSpec) -> Calibration:
    """c = 1 / Res(X^-1 p / p), cached per (semantics, contour)."""
    _check_contour(s, spec)
    key = (s, spec)
    with _calibration_lock:
        cached = _calibration_cache.get(key)
    if cached is not None:
        return cached

    logger.info(f"Calibrating {s.kind.value} on {spec!r}")
    residue = numeric_residue(residue_integrand(s, s.generator, 0), spec)
    if abs(residue.value) < CALIBRATION_FLOOR:
        logger.error(f"Calibration residue vanishes for {s.kind.value} on {spec!r}")
        raise CalibrationError(f"calibration residue {residue.value} is numerically zero")
    provenance = f"Res(Xinv·p/p) for model {s.kind.value}, p = {s.generator}"
    if isinstance(spec, VerticalLine):
        provenance += f", line a = {spec.a}, sigma = {spec.sigma}, band {spec.band}"
    else:
        provenance += f", circle r = {spec.r}, N = {spec.N}"
    calibration = Calibration(c=1 / residue.value, provenance=provenance)
    with _calibration_lock:
        _calibration_cache[key] = calibration
    return calibration


def clear_calibration_cache() -> None:
    with _calibration_lock:
        _calibration_cache.clear()


def residue_extract(
    s: ModelSemantics,
    f: Evaluable,
    k: int,
    spec: ContourSpec,
    cal: Optional[Calibration] = None,
) -> QuadratureResult:
    """a_k = c·Res(X^-(k+1) f / p)."""
    _check_contour(s, spec, k)
    cal = cal or calibrate(s, spec)
    raw = numeric_residue(residue_integrand(s, f, k), spec)
    warnings = list(raw.warnings)
    if s.kind == ModelKind.forward_difference:
        warnings.append(EXPERIMENTAL_NOTE)
    return QuadratureResult(
        value=cal.c * raw.value,
        error=abs(cal.c) * raw.error,
        tail=abs(cal.c) * raw.tail,
        flagged=raw.flagged,
        warnings=warnings,
    )


def residue_series(s: ModelSemantics, f: Evaluable, K: int, spec: ContourSpec) -> CoefficientSeries:
    _check_truncation(K)
    cal = calibrate(s, spec)
    values, errors, warnings = [], [], []
    for k in range(K + 1):
        result = residue_extract(s, f, k, spec, cal)
        values.append(result.value)
        errors.append(result.error)
        for message in result.warnings:
            if message not in warnings:
                warnings.append(message)
    if s.kind == ModelKind.forward_difference:
        logger.warning(f"Forward-difference residues for K = {K} are experimental")
    return _series(values, errors, s, CoefficientMethod.residue, warnings)


def oracle_series(s: ModelSemantics, f: Evaluable, K: int, allow_cancellation: bool = False) -> CoefficientSeries:
    """The oracle matching the semantics, for f/p."""
    g = _divided_by_generator(s, f, "f/p")
    if s.kind == ModelKind.forward_difference:
        return newton_oracle(g, K, allow_cancellation)
    if s.kind == ModelKind.jackson_a:
        return q_oracle(g, s.q, K)
    if not isinstance(f, AnalyticFunction):
        raise DomainError("the Taylor oracle differentiates symbolically and needs an AnalyticFunction")
    quotient = f if s.generator.is_constant() and complex(s.generator(1.0)) == 1 else f / s.generator
    if s.kind == ModelKind.jackson_b:
        return jackson_b_oracle(quotient, s.q, K)
    return taylor_oracle(quotient, K)


# synthesis


class PartialSum:
    """Σ_{k<=K} a_k φ_k with |a_K φ_K(t)| as the error estimate."""

    def __init__(self, s: ModelSemantics, coeffs: Sequence[complex]):
        self.semantics = s
        self.coeffs = tuple(complex(c) for c in coeffs)

    def __call__(self, t):
        scalar = np.ndim(t) == 0
        points = np.asarray(t, dtype=complex)
        total = np.zeros_like(points)
        for k, a in enumerate(self.coeffs):
            if a != 0:
                total = total + a * basis_eval(self.semantics, k, points)
        return complex(total) if scalar else total

    def error(self, t):
        scalar = np.ndim(t) == 0
        points = np.asarray(t, dtype=complex)
        if not self.coeffs:
            estimate = np.zeros(points.shape)
        else:
            K = len(self.coeffs) - 1
            estimate = np.abs(self.coeffs[K] * basis_eval(self.semantics, K, points))
        return float(estimate) if scalar else estimate


def synthesize(s: ModelSemantics, coeffs: Union[CoefficientSeries, Sequence[complex]]) -> PartialSum:
    values = coeffs.values if isinstance(coeffs, CoefficientSeries) else coeffs
    return PartialSum(s, values)


# forward-difference experiments


def delta_exactness_probe(g: AnalyticFunction, spec: VerticalLine) -> ExactnessProbe:
    """Measured Res(Δg) next to the value 0 that vanishing on difference images would give."""
    s = ModelSemantics(kind=ModelKind.forward_difference)
    measured = barnes_residue(actD(s, g), spec).value
    return ExactnessProbe(g=str(g), measured=measured, discrepancy=abs(measured))


def barnes_bound_check(
    f: Evaluable,
    k: int,
    x_n: float,
    spec: VerticalLine,
    p: Optional[AnalyticFunction] = None,
) -> BoundCheck:
    """
    |∫ X^-(k+1) f / p · w| on Re t = x_n - k - 1 against
    max_{Re t = x_n} |f/p| / (x_n - k)^(k+1) times ∫|w| dy.
    """
    if x_n - k <= 0:
        raise DomainError(f"x_n = {x_n} must exceed k = {k}")
    s = ModelSemantics(kind=ModelKind.forward_difference) if p is None else ModelSemantics(
        kind=ModelKind.forward_difference, generator=p
    )
    line = VerticalLine(a=x_n - k - 1, Y=spec.Y, h=spec.h, sigma=spec.sigma)
    measured = abs(barnes_residue(residue_integrand(s, f, k), line).value)

    y, t = _line_nodes(line)
    on_edge = call(_divided_by_generator(s, f, "f/p"), t + (k + 1))
    mass = float(integrate.trapezoid(np.abs(_weight(line, t)), y))
    bound = float(np.max(np.abs(on_edge))) / (x_n - k) ** (k + 1) * mass
    # rounding slack for the trapezoid sums on both sides
    holds = measured <= bound * (1 + 1e-9) + 1e-300
    return BoundCheck(k=k, x_n=x_n, measured=measured, bound=bound, holds=bool(holds))
