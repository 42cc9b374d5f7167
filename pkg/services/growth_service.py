# services/growth_service.py
"""
Sampled growth functionals: maximum modulus M(r, f) on circles, the exponential
type slope, the q-growth functional and little-o checks along sequences.

Limits are never decided from samples; every check reports pass / fail /
indeterminate under the rule in ``little_o_status``.
"""

import logging
import math
from numbers import Number
from typing import List, Optional, Sequence

import numpy as np

from pydantic_schemas.growth import CheckStatus, GrowthEstimate, HypothesisCheck
from services.operators import Evaluable, call, checked_divide
from utils.errors import DomainError, PoleError

logger = logging.getLogger(__name__)

DEFAULT_R_MAX = 64.0
DEFAULT_ANGULAR_NODES = 256
DEFAULT_X_SEQUENCE = tuple(4.0 * 2**n for n in range(5))
DEFAULT_Y_GRID = tuple(np.linspace(-3.0, 3.0, 61))
DEFAULT_O_RADII = tuple(float(2**j) for j in range(2, 9))
DEFAULT_Q_RADII = tuple(float(2**j) for j in range(1, 9))
GROWTH_MARGIN = 0.1


def max_modulus(f: Evaluable, r: float, angular_nodes: int = DEFAULT_ANGULAR_NODES) -> float:
    """M(r, f) = max over |t| = r, sampled at equispaced angles."""
    z = r * np.exp(2j * np.pi * np.arange(angular_nodes) / angular_nodes)
    values = np.abs(call(f, z))
    if np.any(np.isnan(values)):
        return math.inf
    return float(np.max(values))


def _ln_plus(value: float) -> float:
    return max(math.log(value), 0.0) if value > 0 else 0.0


def little_o_status(samples: Sequence[float], margin: float = GROWTH_MARGIN) -> CheckStatus:
    """
    pass: samples non-increasing and the last below the margin;
    fail: the last at or above the margin and not decayed below half of the first;
    indeterminate otherwise.
    """
    if not samples:
        return CheckStatus.indeterminate
    first, last = samples[0], samples[-1]
    if not math.isfinite(last):
        return CheckStatus.failed
    non_increasing = all(b <= a for a, b in zip(samples, samples[1:]))
    if non_increasing and last < margin:
        return CheckStatus.passed
    if last >= margin and last >= 0.5 * first:
        return CheckStatus.failed
    return CheckStatus.indeterminate


def exp_type_estimate(
    f: Evaluable,
    r_max: float = DEFAULT_R_MAX,
    angular_nodes: int = DEFAULT_ANGULAR_NODES,
) -> GrowthEstimate:
    """
    Sample M(r, f) on r = 2^j <= r_max and fit ln⁺M(r) against r by least squares
    over the upper half of the radii. The slope estimates the exponential type.
    """
    if r_max < 1:
        raise DomainError(f"r_max must be at least 1, got {r_max}")
    radii = [float(2**j) for j in range(int(math.floor(math.log2(r_max))) + 1)]
    moduli: List[float] = []
    notes: List[str] = []
    for r in radii:
        value = max_modulus(f, r, angular_nodes)
        if not math.isfinite(value):
            notes.append(f"overflow at r = {r:g}; radius range truncated")
            logger.warning(f"M(r, f) overflows at r = {r:g}")
            break
        moduli.append(value)
    used = radii[: len(moduli)]
    monotone = all(b >= a * (1 - 1e-12) for a, b in zip(moduli, moduli[1:]))
    if not monotone:
        notes.append("sampled M(r, f) is not nondecreasing")

    upper = len(used) // 2
    xs = np.array(used[upper:])
    ys = np.array([_ln_plus(m) for m in moduli[upper:]])
    if len(xs) >= 2:
        slope = float(np.polyfit(xs, ys, 1)[0])
    else:
        slope = 0.0
        notes.append("fewer than two radii in the fit")
    notes.insert(0, f"least-squares slope over r = {', '.join(f'{x:g}' for x in xs)}")
    return GrowthEstimate(
        radii=used,
        max_modulus=moduli,
        tau_hat=max(slope, 0.0),
        monotone=monotone,
        confidence="; ".join(notes),
    )


def q_growth_diagnostic(f: Evaluable, q: Number, radii: Optional[Sequence[float]] = None) -> GrowthEstimate:
    """G(r) = 2 ln⁺M(r, f) / (ln r)² on growing radii, against 1 / ln|q^-1|."""
    modulus = abs(q)
    if not 0 < modulus < 1:
        raise DomainError(f"the q-growth diagnostic needs 0 < |q| < 1, got |q| = {modulus}")
    radii = list(radii or DEFAULT_Q_RADII)
    if any(r <= 1 for r in radii):
        raise DomainError("q-growth radii must exceed 1")
    moduli = [max_modulus(f, r) for r in radii]
    samples = [
        2 * _ln_plus(m) / math.log(r) ** 2 if math.isfinite(m) else math.inf for r, m in zip(radii, moduli)
    ]
    threshold = 1 / math.log(1 / modulus)
    return GrowthEstimate(
        radii=radii,
        max_modulus=moduli,
        q_growth=samples,
        threshold=threshold,
        monotone=all(b >= a * (1 - 1e-12) for a, b in zip(moduli, moduli[1:])),
        confidence=f"diagnostic only; G(r) = 2 ln+M/(ln r)^2 compared with 1/ln|1/q| = {threshold:.6g}",
    )


def q_growth_check(estimate: GrowthEstimate) -> HypothesisCheck:
    samples = estimate.q_growth
    non_increasing = all(b <= a for a, b in zip(samples, samples[1:]))
    below = bool(samples) and samples[-1] < estimate.threshold
    status = CheckStatus.passed if non_increasing and below else CheckStatus.indeterminate
    return HypothesisCheck(
        name="q-exponential growth below ln|1/q|",
        status=status,
        margin=estimate.threshold,
        samples=samples,
        note="sampled G(r); never reported as a failure",
    )


def vertical_growth_check(
    f: Evaluable,
    p: Optional[Evaluable] = None,
    x_list: Sequence[float] = DEFAULT_X_SEQUENCE,
    y_grid: Sequence[float] = DEFAULT_Y_GRID,
    margin: float = GROWTH_MARGIN,
) -> HypothesisCheck:
    """m_n = max_y |f/p (x_n + iy)| / x_n along the sequence x_n."""
    y = np.asarray(y_grid, dtype=float)
    samples: List[float] = []
    for x in x_list:
        t = x + 1j * y
        values = call(f, t)
        if p is not None:
            values = checked_divide(values, call(p, t), t)
        magnitude = np.abs(values)
        samples.append(math.inf if np.any(np.isnan(magnitude)) else float(np.max(magnitude)) / x)
    status = little_o_status(samples, margin)
    return HypothesisCheck(
        name="(f/p)(x_n+iy) = o(x_n) uniformly on the y-grid",
        status=status,
        margin=margin,
        samples=samples,
        note=f"x_n = {', '.join(f'{x:g}' for x in x_list)}; y in [{y.min():g}, {y.max():g}] ({len(y)} points)",
    )


def little_o_check(
    f: Evaluable,
    radii: Sequence[float] = DEFAULT_O_RADII,
    margin: float = GROWTH_MARGIN,
) -> HypothesisCheck:
    """M(r, f) / r on growing circles, for |f(t)| = o(|t|)."""
    samples = [max_modulus(f, r) / r for r in radii]
    return HypothesisCheck(
        name="|f(t)| = o(|t|)",
        status=little_o_status(samples, margin),
        margin=margin,
        samples=samples,
        note=f"r = {', '.join(f'{r:g}' for r in radii)}",
    )


def exp_type_check(estimate: GrowthEstimate, bound: float, margin: float = GROWTH_MARGIN) -> HypothesisCheck:
    """Exponential type at most ``bound``, with a relative sampling margin."""
    limit = bound * (1 + margin)
    if "truncated" in estimate.confidence:
        status = CheckStatus.indeterminate
    elif estimate.tau_hat <= limit:
        status = CheckStatus.passed
    else:
        status = CheckStatus.failed
    return HypothesisCheck(
        name=f"exponential type at most {bound:.6g}",
        status=status,
        margin=limit,
        samples=[estimate.tau_hat],
        note=estimate.confidence,
    )


def sample_residual(values: np.ndarray, what: str) -> float:
    magnitude = np.abs(values)
    if np.any(np.isnan(magnitude)):
        raise PoleError(f"non-finite values while measuring {what}")
    return float(np.max(magnitude)) if magnitude.size else 0.0
