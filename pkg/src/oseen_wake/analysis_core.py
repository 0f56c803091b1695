"""Scalar building blocks: the Oseen roots, decay weights and weighted sup-norms.

Conventions
-----------
All complex square roots use the principal branch (nonnegative real part).
This is the branch for which ``exp(-kappa*t)`` and ``exp(-sqrt(-ik)*t)``
decay as ``t`` grows, so it is the only one used anywhere in the package.

Functions accept scalars or arrays and broadcast like numpy ufuncs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

__all__ = [
    "kappa",
    "lambda_minus",
    "sqrt_minus_ik",
    "WeightSpec",
    "SpaceIndex",
    "CompositeWeight",
    "mu",
    "mu_bar",
    "mu_tilde",
    "space_weight",
    "weighted_ratio",
    "empirical_space_norm",
    "erfcx",
    "dawson",
]


def kappa(k: ArrayLike) -> np.ndarray:
    """Decaying root ``sqrt(k**2 - i k)`` of the Oseen symbol."""
    k = np.asarray(k, dtype=float)
    return np.sqrt(k * k - 1j * k)


def lambda_minus(k: ArrayLike) -> np.ndarray:
    """``-Re(kappa(k))`` written without complex arithmetic."""
    k = np.abs(np.asarray(k, dtype=float))
    # sqrt(k^2 + k^4) = |k| sqrt(1 + k^2), which cannot overflow first
    return -0.5 * np.sqrt(2.0 * k * np.sqrt(1.0 + k * k) + 2.0 * k * k)


def sqrt_minus_ik(k: ArrayLike) -> np.ndarray:
    """Principal ``sqrt(-i k) = |k|**0.5 * exp(-i sign(k) pi/4)``."""
    k = np.asarray(k, dtype=float)
    root = np.sqrt(np.abs(k) / 2.0)
    return root - 1j * np.sign(k) * root


@dataclass(frozen=True)
class WeightSpec:
    """Weight ``mu_{alpha,r}(k,t) = 1/(1 + (|k| t**r)**alpha)``."""

    alpha: float
    r: float

    def __post_init__(self) -> None:
        if not (self.alpha >= 0 and self.r >= 0):
            raise ValueError(f"weight needs alpha >= 0 and r >= 0, got {self}")


@dataclass(frozen=True)
class SpaceIndex:
    """Index ``(alpha, p, q)`` of a weighted sup-norm space.

    ``p`` is the decay rate paired with the ``r=1`` weight and ``q`` the rate
    paired with the ``r=2`` weight.  ``math.inf`` drops the corresponding term.
    """

    alpha: float
    p: float
    q: float

    def __post_init__(self) -> None:
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if math.isinf(self.p) and math.isinf(self.q):
            raise ValueError("p and q cannot both be infinite (zero weight)")
        for name in ("p", "q"):
            value = getattr(self, name)
            if math.isnan(value) or value == -math.inf:
                raise ValueError(f"{name} must be a real number or +inf, got {value}")

    def shifted(self, dp: float = 0.0, dq: float = 0.0) -> SpaceIndex:
        return SpaceIndex(self.alpha, self.p + dp, self.q + dq)


def mu(spec: WeightSpec, k: ArrayLike, t: ArrayLike) -> np.ndarray:
    """Evaluate ``mu_{alpha,r}(k,t)``.

    At ``k = 0`` the weight is 1.  For ``alpha = 0`` every ``k != 0`` gives 1/2,
    so the weight jumps at the origin; this is kept on purpose.
    """
    k = np.abs(np.asarray(k, dtype=float))
    t = np.asarray(t, dtype=float)
    with np.errstate(over="ignore"):
        scaled = k * t**spec.r
        value = 1.0 / (1.0 + scaled**spec.alpha)
    return np.where(k == 0, 1.0, value)


def mu_bar(alpha: float, k: ArrayLike, t: ArrayLike) -> np.ndarray:
    return mu(WeightSpec(alpha, 1.0), k, t)


def mu_tilde(alpha: float, k: ArrayLike, t: ArrayLike) -> np.ndarray:
    return mu(WeightSpec(alpha, 2.0), k, t)


def space_weight(idx: SpaceIndex, k: ArrayLike, t: ArrayLike) -> np.ndarray:
    """Denominator ``t**-p mu_bar + t**-q mu_tilde`` of the space norm."""
    k = np.asarray(k, dtype=float)
    t = np.asarray(t, dtype=float)
    total = np.zeros(np.broadcast(k, t).shape)
    if not math.isinf(idx.p):
        total = total + t ** (-idx.p) * mu_bar(idx.alpha, k, t)
    if not math.isinf(idx.q):
        total = total + t ** (-idx.q) * mu_tilde(idx.alpha, k, t)
    return total


@dataclass(frozen=True)
class CompositeWeight:
    """Sum of terms ``s**-exponent * mu_kind`` with ``kind`` in {'bar', 'tilde'}."""

    terms: tuple[tuple[float, Literal["bar", "tilde"], float], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("a composite weight needs at least one term")
        for exponent, kind, alpha in self.terms:
            if not math.isfinite(exponent):
                raise ValueError("composite weight exponents must be finite")
            if kind not in ("bar", "tilde"):
                raise ValueError(f"unknown weight kind {kind!r}")
            if alpha < 0:
                raise ValueError("alpha must be >= 0")

    def __call__(self, k: ArrayLike, s: ArrayLike) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        total = 0.0
        for exponent, kind, alpha in self.terms:
            r = 1.0 if kind == "bar" else 2.0
            total = total + s ** (-exponent) * mu(WeightSpec(alpha, r), k, s)
        return np.asarray(total)

    @classmethod
    def source_q0(cls, alpha: float) -> CompositeWeight:
        """Bound shape of the first nonlinear source."""
        return cls(((3.5, "bar", alpha), (3.0, "tilde", alpha)))

    @classmethod
    def source_q1(cls, alpha: float) -> CompositeWeight:
        """Bound shape of the second nonlinear source."""
        return cls(((3.5, "bar", alpha), (4.0, "tilde", alpha)))

    @classmethod
    def source_q1_first(cls, alpha: float) -> CompositeWeight:
        """Bound shape of the second source with one power of ``k`` removed."""
        return cls(((4.0, "bar", alpha - 1), (4.0, "tilde", alpha - 1)))

    @classmethod
    def source_q1_second(cls, alpha: float, delta: float) -> CompositeWeight:
        """Bound shape of the k-derivative of the second source."""
        return cls(((4.5 - delta, "bar", alpha - 2), (4.0, "tilde", alpha - 2)))


def weighted_ratio(k: ArrayLike, t: ArrayLike, values: ArrayLike, idx: SpaceIndex) -> np.ndarray:
    """Pointwise ``|value| / weight`` whose supremum is the space norm."""
    k = np.asarray(k, dtype=float)
    t = np.asarray(t, dtype=float)
    values = np.asarray(values)
    if values.size == 0:
        raise ValueError("empty sample grid")
    if np.any(t < 1):
        raise ValueError("all sample heights must satisfy t >= 1")
    if np.any(k == 0):
        raise ValueError("the sample grid must avoid k = 0")
    weight = space_weight(idx, k, t)
    magnitude = np.abs(values)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = magnitude / weight
    # a vanishing value over an underflowed weight counts as zero
    return np.where(magnitude == 0, 0.0, ratio)


def empirical_space_norm(k: ArrayLike, t: ArrayLike, values: ArrayLike, idx: SpaceIndex) -> float:
    """Grid supremum of ``|value| / (t**-p mu_bar + t**-q mu_tilde)``.

    This is a lower bound on the true norm; the grid has to straddle the
    crossovers ``|k| t ~ 1`` and ``|k| t**2 ~ 1`` to be meaningful.
    """
    return float(np.max(weighted_ratio(k, t, values, idx)))


def erfcx(w: ArrayLike) -> np.ndarray:
    """Scaled complementary error function ``exp(w**2) erfc(w)``."""
    return special.erfcx(np.asarray(w, dtype=float))


def dawson(w: ArrayLike) -> np.ndarray:
    """Dawson's integral ``sqrt(pi)/2 exp(-w**2) erfi(w)``."""
    return special.dawsn(np.asarray(w, dtype=float))
