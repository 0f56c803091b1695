"""Green's kernels of the linearized vorticity problem, the solution
components built from them, nonlinear source assembly and the extraction
of the two asymptotic constants.

Every kernel is an exponential polynomial in ``sigma``::

    kernel(k, sigma) = sum_j (coef_j + lin_j * sigma) * exp(rate_j * sigma)

with rates among ``+-|k|`` and ``+-kappa``.  The term tables below are the
single source of the formulas.  Components multiply a kernel by a decaying
prefactor ``exp(-b (t-1))``; the two exponents are added before
exponentiating, so growing kernel factors never overflow.  For the kernels
that vanish at ``sigma = 0`` (their ``coef`` sum is exactly zero) small
exponents go through ``expm1``, which keeps full relative accuracy as
``k -> 0``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _backend
from .analysis_core import SpaceIndex, kappa
from .asym_fields import AsymptoticCoefficients
from .quadrature import NonConvergenceError, QuadratureBudget, QuadratureResult, integrate
from .transform import SpectralField, convolve

__all__ = [
    "KERNEL_IDS",
    "COMPONENT_IDS",
    "COMPONENT_BUDGET",
    "SourceTerm",
    "ComponentResult",
    "dk_kappa",
    "kernel",
    "kernel_terms",
    "component",
    "assemble_Q",
    "extract_constants",
    "source_moments",
]

KERNEL_IDS = ("h11", "k11", "g11", "f11", "f20", "dk_f11")
COMPONENT_IDS = ("psi11", "phi11", "eta11", "omega11", "omega20", "dk_omega111", "dk_omega211")

# components are compared after multiplication by large weights, so the
# default budget is purely relative
COMPONENT_BUDGET = QuadratureBudget(rel_tol=1e-11, abs_tol=1e-300, max_panels=40000)


def _nonzero_k(k) -> np.ndarray:
    k = np.atleast_1d(np.asarray(k, dtype=float))
    if k.ndim != 1:
        raise ValueError("k must be a scalar or a 1-D array")
    if np.any(k == 0) or not np.all(np.isfinite(k)):
        raise ValueError("k must be finite and nonzero")
    return k


def dk_kappa(k):
    """``d kappa / dk = (2k - i) / (2 kappa)``."""
    k = np.asarray(k, dtype=float)
    out = (2.0 * k - 1j) / (2.0 * kappa(k))
    return out if out.ndim else complex(out)


def kernel_terms(kid: str, k):
    """Term table of kernel ``kid``: arrays ``(coef, lin, rate)`` of shape ``(nk, nterms)``
    and whether ``coef`` sums to zero (the kernel vanishes at ``sigma = 0``)."""
    k = _nonzero_k(k)
    a = np.abs(k).astype(complex)
    K = kappa(k)
    ik = 1j * k
    zero = np.zeros_like(K)
    one = np.ones_like(K)
    A = (a + K) ** 2 / ik
    if kid in ("h11", "k11"):
        B = 2.0 * K * (a + K) / ik
        coef = np.stack([-one, A, -B], axis=1)
        rate = np.stack([a, -a, -K], axis=1)
        if kid == "k11":
            coef = coef * (-(a / ik))[:, None]
        lin = np.zeros_like(coef)
        return coef, lin, rate, True
    if kid in ("g11", "f11"):
        C = 2.0 * a * (a + K) / ik
        rate = np.stack([K, -K, -a], axis=1)
        if kid == "g11":
            coef = (K / ik)[:, None] * np.stack([one, A, -C], axis=1)
        else:
            coef = np.stack([one, A, -C], axis=1)
        return coef, np.zeros_like(coef), rate, True
    if kid == "f20":
        coef = np.stack([ik / K - (a + K) ** 2 / K, 2.0 * (a + K)], axis=1)
        rate = np.stack([-K, -a], axis=1)
        return coef, np.zeros_like(coef), rate, False
    if kid == "dk_f11":
        P = 1j * (a + K) ** 2 / (K * a)
        R = (k * k + K * K) / (2.0 * K * k)
        S = 2j * (k * k + a * K) / (k * k)
        coef = np.stack([P, -P, zero, zero, zero], axis=1)
        lin = np.stack([zero, zero, R, R + S * (k * k + K * K) / (2.0 * K), -S * a], axis=1)
        rate = np.stack([-a, -K, K, -K, -a], axis=1)
        return coef, lin, rate, True
    raise ValueError(f"unknown kernel {kid!r}; expected one of {KERNEL_IDS}")


def kernel(kid: str, k, sigma):
    """Closed-form value of kernel ``kid`` at ``(k, sigma)``, ``k != 0``, ``sigma >= 0``.

    This is the literal formula, summed term by term; it overflows for large
    ``|k| sigma`` exactly as the formula does.  Scalar inputs give a complex,
    array inputs broadcast to ``(len(sigma), len(k))``.
    """
    scalar = np.ndim(k) == 0 and np.ndim(sigma) == 0
    sig = np.atleast_1d(np.asarray(sigma, dtype=float))
    if np.any(sig < 0):
        raise ValueError("sigma must be nonnegative")
    coef, lin, rate, _ = kernel_terms(kid, k)
    with np.errstate(over="ignore", invalid="ignore"):
        out = _backend.expsum(coef, lin, rate, np.zeros(coef.shape[0], complex), sig, False)
    if scalar:
        return complex(out[0, 0])
    if np.ndim(sigma) == 0:
        return out[0]
    if np.ndim(k) == 0:
        return out[:, 0]
    return out


@dataclass(frozen=True)
class SourceTerm:
    """A nonlinear source ``Q(k, s)`` on ``s >= 1``.

    ``evaluator(k, s)`` must broadcast numpy arrays.  ``support`` is the
    s-interval outside which the source vanishes (upper end may be ``inf``),
    ``kinks`` are interior s-values where it is not smooth, and
    ``dk_evaluator`` is ``dQ/dk`` when known.  ``moments`` optionally
    carries the exact ``(c1, c2)`` for cross-checks.
    """

    evaluator: Callable[[np.ndarray, np.ndarray], np.ndarray]
    support: tuple[float, float] = (1.0, math.inf)
    dk_evaluator: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None
    k_decay: SpaceIndex | None = None
    kinks: tuple[float, ...] = ()
    moments: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        lo, hi = self.support
        if not (1.0 <= lo < hi):
            raise ValueError("support must be an interval [s0, s1] with 1 <= s0 < s1")

    def __call__(self, k, s) -> np.ndarray:
        return np.asarray(self.evaluator(np.asarray(k, dtype=float), np.asarray(s, dtype=float)), dtype=complex)

    def scaled(self, factor: float) -> SourceTerm:
        dk = self.dk_evaluator
        return SourceTerm(
            lambda k, s: factor * self.evaluator(k, s),
            self.support,
            None if dk is None else (lambda k, s: factor * dk(k, s)),
            self.k_decay,
            self.kinks,
            None if self.moments is None else (factor * self.moments[0], factor * self.moments[1]),
        )


@dataclass(frozen=True)
class ComponentResult:
    value: complex | np.ndarray
    error: float | np.ndarray


_COMPONENTS = {
    # id: (kernel, prefactor rate, integrate up to t (True) or from t to infinity)
    "psi11": ("h11", "abs", True),
    "phi11": ("k11", "abs", True),
    "eta11": ("g11", "kappa", True),
    "omega11": ("f11", "kappa", True),
    "omega20": ("f20", "kappa", False),
    "dk_omega111": ("f11", "kappa", True),
    "dk_omega211": ("dk_f11", "kappa", True),
}


def _s_panels(lo: float, hi: float, kinks) -> np.ndarray:
    # geometric refinement toward both ends resolves exp(-|k|(t-s)) layers
    span = hi - lo
    steps = 2.0 ** -np.arange(1, 40)
    inner = [k for k in kinks if lo < k < hi]
    return np.unique(np.concatenate([[lo, hi], lo + span * steps, hi - span * steps, inner]))


def _integrate_s(integrand, lo: float, hi: float, kinks, budget: QuadratureBudget) -> QuadratureResult:
    """Integrate over ``[lo, hi]``; an infinite ``hi`` uses ``s = lo + v/(1-v)``."""
    if math.isinf(hi):
        def mapped(v):
            # nodes that round to v = 1 sit at s = inf, where the source has decayed
            w = np.where(v < 1.0, 1.0 - v, 1.0)
            s = lo + v / w
            out = integrand(s) * (1.0 / (w * w))[:, None]
            return np.where((v < 1.0)[:, None], out, 0.0)

        edges = np.concatenate([[0.0, 1.0], 1.0 - 2.0 ** -np.arange(1, 50)])
        for kink in kinks:
            if kink > lo:
                edges = np.append(edges, (kink - lo) / (1.0 + kink - lo))
        return integrate(mapped, np.unique(edges), budget)
    return integrate(integrand, _s_panels(lo, hi, kinks), budget)


def component(cid: str, Q: SourceTerm, k, t: float,
              budget: QuadratureBudget = COMPONENT_BUDGET) -> ComponentResult:
    """Solution component ``cid`` driven by ``Q`` at ``(k, t)``; ``k != 0``.

    ``k`` may be a 1-D array, in which case all wavenumbers share one
    adaptive s-mesh and each meets its own tolerance.  For ``omega20`` the
    source plays the role of ``Q0``; for the others it is ``Q1``.
    """
    if cid not in _COMPONENTS:
        raise ValueError(f"unknown component {cid!r}; expected one of {COMPONENT_IDS}")
    if not t >= 1:
        raise ValueError("t must be >= 1")
    scalar = np.ndim(k) == 0
    k = _nonzero_k(k)
    kid, prefactor, up_to_t = _COMPONENTS[cid]
    tau = t - 1.0
    coef, lin, rate, anchored = kernel_terms(kid, k)
    K = kappa(k)
    shift = -(np.abs(k) * tau if prefactor == "abs" else K * tau).astype(complex)

    s0, s1 = Q.support
    lo, hi = (max(1.0, s0), min(t, s1)) if up_to_t else (max(t, s0), s1)
    if not lo < hi:
        zero = np.zeros(k.size, complex)
        return ComponentResult(complex(zero[0]) if scalar else zero, 0.0 if scalar else np.zeros(k.size))

    def integrand(s: np.ndarray) -> np.ndarray:
        values = _backend.expsum(coef, lin, rate, shift, s - 1.0, anchored)
        return 0.5 * values * Q(k[None, :], s[:, None])

    res = _integrate_s(integrand, lo, hi, Q.kinks, budget)
    value = np.asarray(res.value, dtype=complex)
    error = np.asarray(res.error, dtype=float)
    if cid == "dk_omega111":
        factor = -tau * dk_kappa(k)
        value = value * factor
        error = error * np.abs(factor)
    if scalar:
        return ComponentResult(complex(value[0]), float(error[0]))
    return ComponentResult(value, error)


class _ConvolutionSource:
    """Lazy, memoized ``(f * g)(k, s) + sign * h(k, s)`` on arbitrary (k, s) arrays.

    The cache is keyed on the exact float pair and guarded by a lock, so it
    can be shared by worker threads.
    """

    def __init__(self, f: SpectralField, g: SpectralField, extra: SpectralField | None,
                 sign: float, budget: QuadratureBudget) -> None:
        self.f, self.g, self.extra, self.sign, self.budget = f, g, extra, sign, budget
        self._cache: dict[tuple[float, float], complex] = {}
        self._lock = threading.Lock()

    def _one(self, k: float, s: float) -> complex:
        key = (k, s)
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        value = convolve(self.f, self.g, k, s, self.budget).value
        if self.extra is not None:
            value += self.sign * complex(np.asarray(self.extra(np.array([k]), s))[0])
        with self._lock:
            self._cache[key] = value
        return value

    def __call__(self, k, s) -> np.ndarray:
        k, s = np.broadcast_arrays(np.asarray(k, dtype=float), np.asarray(s, dtype=float))
        out = np.empty(k.shape, dtype=complex)
        for idx in np.ndindex(k.shape):
            out[idx] = self._one(float(k[idx]), float(s[idx]))
        return out


def assemble_Q(u_hat: SpectralField, v_hat: SpectralField, omega_hat: SpectralField,
               F_hat: tuple[SpectralField | None, SpectralField | None] = (None, None),
               support: tuple[float, float] = (1.0, math.inf),
               budget: QuadratureBudget = QuadratureBudget(rel_tol=1e-10, abs_tol=1e-14)):
    """Sources ``Q0 = u*omega + F2`` and ``Q1 = v*omega - F1`` as lazy ``SourceTerm``s.

    The spectral fields are evaluated at ``t = s``.  ``dQ1/dk`` is provided
    when ``omega_hat`` (and ``F1``, if given) carry a ``dk_evaluator``.
    """
    F1, F2 = F_hat
    q0 = _ConvolutionSource(u_hat, omega_hat, F2, 1.0, budget)
    q1 = _ConvolutionSource(v_hat, omega_hat, F1, -1.0, budget)
    dk_q1 = None
    if omega_hat.dk_evaluator is not None and (F1 is None or F1.dk_evaluator is not None):
        d_omega = SpectralField(omega_hat.dk_evaluator, None, "general")
        d_f1 = None if F1 is None else SpectralField(F1.dk_evaluator, None, "general")
        dk_q1 = _ConvolutionSource(v_hat, d_omega, d_f1, -1.0, budget)
    return SourceTerm(q0, support), SourceTerm(q1, support, dk_q1)


def source_moments(Q: SourceTerm, budget: QuadratureBudget = QuadratureBudget(rel_tol=1e-12, abs_tol=1e-15)
                   ) -> QuadratureResult:
    """``int (s-1)**n Q(0, s) ds`` for ``n = 1, 2`` as a 2-vector with errors."""

    def integrand(s: np.ndarray) -> np.ndarray:
        q = Q(np.zeros_like(s), s)
        sigma = s - 1.0
        return np.stack([sigma * q, sigma * sigma * q], axis=1)

    lo, hi = Q.support
    return _integrate_s(integrand, lo, hi, Q.kinks, budget)


def extract_constants(Q1: SourceTerm,
                      budget: QuadratureBudget = QuadratureBudget(rel_tol=1e-12, abs_tol=1e-15)
                      ) -> AsymptoticCoefficients:
    """The constants ``c1, c2``: first and second ``(s-1)`` moments of ``Q1(0, s)``.

    Raises ``ValueError`` if either moment has an imaginary part above the
    quadrature tolerance, which means the source is not conjugate symmetric.
    """
    res = source_moments(Q1, budget)
    value = np.asarray(res.value, dtype=complex)
    error = np.asarray(res.error, dtype=float)
    for j in range(2):
        allowed = max(10.0 * float(error[j]), budget.abs_tol, budget.rel_tol * abs(value[j].real))
        if abs(value[j].imag) > allowed:
            raise ValueError(
                f"moment {j + 1} has imaginary part {value[j].imag:.3e}; the source is not conjugate symmetric"
            )
    return AsymptoticCoefficients(float(value[0].real), float(value[1].real))
