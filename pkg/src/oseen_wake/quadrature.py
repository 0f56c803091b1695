"""Adaptive 21-point Gauss-Kronrod integration, vectorized over panels.

The integrand maps a 1-D array of nodes to an array of shape ``(n,)`` or
``(n, m)``; in the second case the ``m`` components share one panel mesh and
each must meet its own tolerance.  All new panels of a refinement sweep are
evaluated in a single call, and panel sums are always taken in left-to-right
order so results are reproducible bit for bit.

The error estimate is the raw difference between the Kronrod and the embedded
Gauss result on each panel.  That is pessimistic for smooth integrands, which
is the point: a reported error is an upper bound in practice, not a guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["QuadratureBudget", "QuadratureResult", "NonConvergenceError", "integrate"]

# Kronrod nodes on [0, 1]; the odd-indexed ones are the 10-point Gauss nodes
_XK = np.array([
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0,
])
_WK = np.array([
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525634736, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS_WEIGHTS = np.zeros(21)
GAUSS_WEIGHTS[1:10:2] = _WG
GAUSS_WEIGHTS[11:20:2] = _WG[::-1]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureBudget:
    """Tolerances and limits for one adaptive integral.

    ``truncation_K`` fixes the cutoff of an infinite k-range; ``None`` lets the
    caller derive it from a decay hint or by doubling.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_panels: int = 20000
    truncation_K: float | None = None

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_panels < 1:
            raise ValueError("max_panels must be positive")
        if self.truncation_K is not None and not self.truncation_K > 0:
            raise ValueError("truncation_K must be positive")

    def tightened(self, factor: float = 10.0) -> QuadratureBudget:
        return QuadratureBudget(
            self.rel_tol / factor, self.abs_tol / factor, self.max_panels * 4, self.truncation_K
        )


@dataclass(frozen=True)
class QuadratureResult:
    value: complex | float | np.ndarray
    error: float | np.ndarray
    panels: int


class NonConvergenceError(RuntimeError):
    """The budget ran out before the tolerance was met.

    The best available value and its error estimate are attached so callers
    can report them, but they are never returned as if converged.
    """

    def __init__(self, message: str, value=None, error=None) -> None:
        super().__init__(message)
        self.value = value
        self.error = error


def _apply_rule(func: Callable[[np.ndarray], np.ndarray], a: np.ndarray, b: np.ndarray):
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = (mid[:, None] + half[:, None] * NODES[None, :]).ravel()
    fx = np.asarray(func(x))
    scalar = fx.ndim == 1
    fx = fx.reshape(a.size, 21, -1)
    h = half[:, None]
    kron = np.einsum("pnm,n->pm", fx, KRONROD_WEIGHTS) * h
    gauss = np.einsum("pnm,n->pm", fx, GAUSS_WEIGHTS) * h
    absint = np.einsum("pnm,n->pm", np.abs(fx), KRONROD_WEIGHTS) * np.abs(h)
    return kron, np.abs(kron - gauss), absint, scalar


def integrate(
    func: Callable[[np.ndarray], np.ndarray],
    breakpoints,
    budget: QuadratureBudget = QuadratureBudget(),
) -> QuadratureResult:
    """Integrate ``func`` over ``[breakpoints[0], breakpoints[-1]]``.

    Interior breakpoints become forced panel edges.  Raises
    ``NonConvergenceError`` when ``budget.max_panels`` is exceeded or panels
    shrink to roundoff size before the tolerance is met.
    """
    edges = np.unique(np.asarray(breakpoints, dtype=float))
    if edges.size < 2:
        probe = np.asarray(func(np.array([float(edges[0]) if edges.size else 0.0])))
        if probe.ndim == 1:
            return QuadratureResult(probe.dtype.type(0), 0.0, 0)
        return QuadratureResult(np.zeros(probe.shape[1:], dtype=probe.dtype), np.zeros(probe.shape[1:]), 0)
    a_new, b_new = edges[:-1], edges[1:]
    a_all = np.empty(0)
    b_all = np.empty(0)
    val_all = err_all = abs_all = None
    while True:
        kron, err, absint, scalar = _apply_rule(func, a_new, b_new)
        if val_all is None:
            val_all = np.empty((0, kron.shape[1]), dtype=kron.dtype)
            err_all = np.empty((0, kron.shape[1]))
            abs_all = np.empty((0, kron.shape[1]))
        a_all = np.concatenate([a_all, a_new])
        b_all = np.concatenate([b_all, b_new])
        val_all = np.concatenate([val_all, kron])
        err_all = np.concatenate([err_all, err])
        abs_all = np.concatenate([abs_all, absint])
        order = np.argsort(a_all, kind="stable")
        a_all, b_all = a_all[order], b_all[order]
        val_all, err_all, abs_all = val_all[order], err_all[order], abs_all[order]

        total = np.sum(val_all, axis=0)
        total_err = np.sum(err_all, axis=0)
        roundoff = 50.0 * _EPS * np.sum(abs_all, axis=0)
        tol = np.maximum(np.maximum(budget.abs_tol, budget.rel_tol * np.abs(total)), roundoff)
        pending = total_err > tol
        if not np.any(pending):
            break

        # per component, bisect the worst panels until the rest fits in half the tolerance
        split = np.zeros(a_all.size, dtype=bool)
        for j in np.flatnonzero(pending):
            e = err_all[:, j]
            worst = np.argsort(-e, kind="stable")
            remaining = total_err[j] - np.cumsum(e[worst])
            count = int(np.searchsorted(-remaining, -0.5 * tol[j])) + 1
            split[worst[:count]] = True
        width = b_all - a_all
        scale = np.maximum(np.abs(a_all), np.abs(b_all))
        split &= width > 64 * _EPS * np.maximum(scale, 1e-300)
        n_panels = a_all.size + int(split.sum())
        if not np.any(split) or n_panels > budget.max_panels:
            value = total[0] if scalar else total
            error = total_err[0] if scalar else total_err
            reason = "panel limit" if np.any(split) else "panels at roundoff size"
            raise NonConvergenceError(
                f"quadrature did not converge ({reason}, {a_all.size} panels, "
                f"error {np.max(total_err):.3e} vs tolerance {np.min(tol):.3e})",
                value,
                error,
            )
        mid = 0.5 * (a_all[split] + b_all[split])
        a_new = np.concatenate([a_all[split], mid])
        b_new = np.concatenate([mid, b_all[split]])
        keep = ~split
        a_all, b_all = a_all[keep], b_all[keep]
        val_all, err_all, abs_all = val_all[keep], err_all[keep], abs_all[keep]

    if scalar:
        return QuadratureResult(total[0], float(total_err[0]), a_all.size)
    return QuadratureResult(total, total_err, a_all.size)
