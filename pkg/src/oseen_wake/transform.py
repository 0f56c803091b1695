"""Fourier transforms and k-convolution with error control.

Conventions::

    f_hat(k) = int exp(+i k x) f(x) dx
    f(x)     = (1/2pi) int exp(-i k x) f_hat(k) dk
    (f_hat * g_hat)(k) = (1/2pi) int f_hat(k - k') g_hat(k') dk'

Spectral integrands in this package mix ``|k|``, ``sqrt|k|`` and
``1/sqrt|k|`` behaviour at the origin.  Every half-line integral therefore
runs in the variable ``u = sqrt(k)``, which turns all of these into smooth
functions of ``u``; the adaptive engine then only has to resolve oscillation
and decay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .analysis_core import SpaceIndex
from .quadrature import NonConvergenceError, QuadratureBudget, QuadratureResult, integrate

__all__ = [
    "SpectralField",
    "TransformResult",
    "inverse_fourier",
    "forward_fourier",
    "convolve",
    "QuadratureBudget",
    "NonConvergenceError",
]

Symmetry = Literal["conjugate", "anticonjugate", "general"]

_K_CAP = 1e12
_GEOMETRIC_LEVELS = 56


@dataclass(frozen=True)
class SpectralField:
    """A complex function of ``(k, t)`` with decay metadata.

    ``evaluator(k, t)`` must accept a 1-D array of ``k`` and a scalar ``t``.
    ``symmetry`` is ``"conjugate"`` when ``f(-k) = conj(f(k))`` (real inverse
    transform), ``"anticonjugate"`` when ``f(-k) = -conj(f(k))`` (purely
    imaginary inverse transform), else ``"general"``.  ``decay`` is a space
    the field is known to belong to; it is used to choose the k cutoff.
    """

    evaluator: Callable[[np.ndarray, float], np.ndarray]
    decay: SpaceIndex | None = None
    symmetry: Symmetry = "conjugate"
    dk_evaluator: Callable[[np.ndarray, float], np.ndarray] | None = None

    def __call__(self, k, t) -> np.ndarray:
        return np.asarray(self.evaluator(np.asarray(k, dtype=float), t))


@dataclass(frozen=True)
class TransformResult:
    value: complex | float
    error: float
    cutoff: float
    panels: int


def _tail_cutoff(f: SpectralField, t: float, tol: float) -> float:
    """Cutoff K with ``(1/pi) int_K^inf |f| dk <= tol`` from the decay hint.

    The norm constant is calibrated on a log-spaced sample; the weight tail
    ``int_K^inf (|k| t^r)^-alpha dk`` is then integrated in closed form.
    """
    idx = f.decay
    alpha = idx.alpha
    if alpha <= 1:
        raise ValueError("the decay hint needs alpha > 1 for an integrable tail")
    sample = np.logspace(-12, 8, 401)
    ks = sample if f.symmetry != "general" else np.concatenate([-sample, sample])
    from .analysis_core import space_weight

    with np.errstate(all="ignore"):
        ratio = np.abs(f(ks, t)) / space_weight(idx, ks, t)
    ratio = ratio[np.isfinite(ratio)]
    norm = float(np.max(ratio)) if ratio.size else 0.0
    if norm == 0.0:
        return 1.0
    coefficient = 0.0
    if not math.isinf(idx.p):
        coefficient += t ** (-idx.p - alpha)
    if not math.isinf(idx.q):
        coefficient += t ** (-idx.q - 2 * alpha)
    coefficient *= norm / ((alpha - 1) * math.pi)
    return min(_K_CAP, (coefficient / tol) ** (1.0 / (alpha - 1)))


def _k_breakpoints(lo: float, hi: float, x: float, max_panels: int) -> np.ndarray:
    """Panel edges on ``[lo, hi]``: geometric toward ``lo`` plus oscillation spacing."""
    span = hi - lo
    geometric = lo + span * 2.0 ** -np.arange(_GEOMETRIC_LEVELS)
    points = [np.array([lo, hi]), geometric]
    if x != 0.0:
        step = math.pi / abs(x)
        count = int(span / step)
        if 0 < count < max_panels // 2:
            points.append(lo + step * np.arange(1, count + 1))
    edges = np.unique(np.concatenate(points))
    return edges[(edges >= lo) & (edges <= hi)]


def _half_line(f: SpectralField, x: float, t: float, sign: float, lo: float, hi: float,
               budget: QuadratureBudget, with_abs: bool = False) -> QuadratureResult:
    """``int_lo^hi exp(-i sign k x) f(sign k) dk`` in the variable ``u = sqrt(k)``."""

    def integrand(u: np.ndarray) -> np.ndarray:
        k = u * u
        value = 2.0 * u * np.exp(-1j * sign * k * x) * f(sign * k, t)
        if with_abs:
            return np.stack([value, np.abs(value).astype(complex)], axis=1)
        return value

    edges = np.sqrt(_k_breakpoints(lo, hi, x, budget.max_panels))
    return integrate(integrand, edges, budget)


def _half_line_to_infinity(f: SpectralField, x: float, t: float, sign: float,
                           budget: QuadratureBudget, tail_tol: float):
    """Integrate a half line, choosing the cutoff; returns (value, error, K, panels)."""
    if budget.truncation_K is not None:
        res = _half_line(f, x, t, sign, 0.0, budget.truncation_K, budget)
        return res.value, res.error, budget.truncation_K, res.panels
    if f.decay is not None:
        K = _tail_cutoff(f, t, tail_tol)
        res = _half_line(f, x, t, sign, 0.0, K, budget)
        return res.value, res.error + math.pi * tail_tol, K, res.panels
    # no hint: extend the range by doubling until the added piece is negligible
    K = 1.0
    res = _half_line(f, x, t, sign, 0.0, K, budget)
    value, error, panels = res.value, res.error, res.panels
    while True:
        if 2 * K > _K_CAP:
            raise NonConvergenceError("k cutoff exceeded the cap while doubling", value, error)
        piece = _half_line(f, x, t, sign, K, 2 * K, budget, with_abs=True)
        value = value + piece.value[0]
        error = error + float(np.max(piece.error))
        panels += piece.panels
        K *= 2
        target = max(budget.abs_tol, budget.rel_tol * abs(value))
        if abs(piece.value[1].real) <= 0.5 * target:
            error += abs(piece.value[1].real)
            return value, error, K, panels


def inverse_fourier(f: SpectralField, x: float, t: float,
                    budget: QuadratureBudget = QuadratureBudget(),
                    use_symmetry: bool = True) -> TransformResult:
    """``(1/2pi) int exp(-i k x) f(k, t) dk`` with an error estimate.

    Conjugate-symmetric fields return a float; anticonjugate fields return a
    purely imaginary complex; general fields return a complex.  With
    ``use_symmetry=False`` both half lines are integrated independently and
    the result is complex, which lets callers check the symmetry claim.
    Raises ``NonConvergenceError`` if the budget is exhausted.
    """
    x = float(x)
    tail_tol = 0.25 * budget.abs_tol
    if use_symmetry and f.symmetry in ("conjugate", "anticonjugate"):
        value, error, K, panels = _half_line_to_infinity(f, x, t, 1.0, budget, tail_tol)
        error = float(error) / math.pi
        if f.symmetry == "conjugate":
            return TransformResult(float(np.real(value)) / math.pi, error, K, panels)
        return TransformResult(1j * float(np.imag(value)) / math.pi, error, K, panels)
    right = _half_line_to_infinity(f, x, t, 1.0, budget, tail_tol)
    left = _half_line_to_infinity(f, x, t, -1.0, budget, tail_tol)
    value = complex(right[0] + left[0]) / (2 * math.pi)
    error = float(right[1] + left[1]) / (2 * math.pi)
    return TransformResult(value, error, max(right[2], left[2]), right[3] + left[3])


def forward_fourier(g: Callable[[np.ndarray], np.ndarray], k: float,
                    budget: QuadratureBudget = QuadratureBudget(),
                    scale: float = 1.0) -> TransformResult:
    """``int exp(i k x) g(x) dx`` for a vectorized, integrable ``g``.

    The x-range ``[-X, X]`` starts at ``8*scale`` and doubles until the last
    added shells are below tolerance; for ``k != 0`` the oscillatory tail is
    estimated by ``|g(X)|/|k|`` (one integration by parts).
    """
    k = float(k)

    def shell(lo: float, hi: float) -> QuadratureResult:
        def integrand(x: np.ndarray) -> np.ndarray:
            xs = np.concatenate([x, -x])
            vals = np.exp(1j * k * xs) * np.asarray(g(xs), dtype=complex)
            n = x.size
            both = vals[:n] + vals[n:]
            return np.stack([both, (np.abs(vals[:n]) + np.abs(vals[n:])).astype(complex)], axis=1)

        edges = _k_breakpoints(lo, hi, k, budget.max_panels) if lo == 0 else None
        if edges is None:
            edges = np.array([lo, hi])
            if k != 0:
                step = math.pi / abs(k)
                count = int((hi - lo) / step)
                if 0 < count < budget.max_panels // 2:
                    edges = np.unique(np.concatenate([edges, lo + step * np.arange(1, count + 1)]))
                    edges = edges[edges <= hi]
        return integrate(integrand, edges, budget)

    X = 8.0 * scale
    res = shell(0.0, X)
    value, error, panels = res.value[0], float(np.max(res.error)), res.panels
    while True:
        piece = shell(X, 2 * X)
        value += piece.value[0]
        error += float(np.max(piece.error))
        panels += piece.panels
        X *= 2
        edge = float(np.sum(np.abs(np.asarray(g(np.array([X, -X]))))))
        tail = piece.value[1].real if k == 0 else 2.0 * edge / abs(k)
        target = max(budget.abs_tol, budget.rel_tol * abs(value))
        if abs(piece.value[0]) <= target and tail <= 0.5 * target:
            return TransformResult(complex(value), error + tail, X, panels)
        if X > _K_CAP:
            raise NonConvergenceError("x range exceeded the cap while doubling", value, error)


def _graded(lo: float, hi: float, toward_lo: bool):
    """Map ``u`` in ``[0, sqrt(hi-lo)]`` to ``k'`` with square-root grading."""
    if toward_lo:
        return lambda u: (lo + u * u, 2.0 * u)
    return lambda u: (hi - u * u, 2.0 * u)


def convolve(f: SpectralField, g: SpectralField, k: float, t: float,
             budget: QuadratureBudget = QuadratureBudget()) -> TransformResult:
    """``(1/2pi) int f(k - k', t) g(k', t) dk'`` with forced edges at ``k' = 0`` and ``k' = k``.

    Each piece between or beyond the two singular points runs in a variable
    with square-root grading toward the singular point, so kinks and
    ``|k'|**-1/2`` singularities there become smooth.  The infinite tails use
    ``k' = c +- (u/(1-u))**2``.
    """
    k = float(k)
    lo, hi = min(0.0, k), max(0.0, k)

    def product(kp: np.ndarray) -> np.ndarray:
        return f(k - kp, t) * g(kp, t)

    pieces = []
    if hi > lo:
        mid = 0.5 * (lo + hi)
        pieces.append((_graded(lo, mid, True), math.sqrt(mid - lo)))
        pieces.append((_graded(mid, hi, False), math.sqrt(hi - mid)))

    def left_tail(u: np.ndarray):
        v = u / (1.0 - u)
        return lo - v * v, 2.0 * v / (1.0 - u) ** 2

    def right_tail(u: np.ndarray):
        v = u / (1.0 - u)
        return hi + v * v, 2.0 * v / (1.0 - u) ** 2

    pieces.append((left_tail, 1.0))
    pieces.append((right_tail, 1.0))

    value = 0.0 + 0.0j
    error = 0.0
    panels = 0
    for mapping, top in pieces:
        def integrand(u: np.ndarray, mapping=mapping) -> np.ndarray:
            kp, jac = mapping(u)
            out = np.asarray(product(kp), dtype=complex) * jac
            return np.where(np.isfinite(out), out, 0.0)

        edges = top * np.concatenate([[0.0], 2.0 ** -np.arange(40)[::-1]])
        if top == 1.0:
            # extra edges toward u = 1 keep the far tail resolved
            edges = np.unique(np.concatenate([edges, 1.0 - 2.0 ** -np.arange(1, 30)]))
        res = integrate(integrand, edges, budget)
        value += res.value
        error += float(res.error)
        panels += res.panels
    return TransformResult(value / (2 * math.pi), error / (2 * math.pi), math.inf, panels)
