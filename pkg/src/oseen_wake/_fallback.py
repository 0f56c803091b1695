"""Pure numpy implementation of the hot loops (used when the extension is absent)."""

from __future__ import annotations

import numpy as np

# below this value of |rate * sigma| an anchored sum is evaluated through expm1
SMALL_EXPONENT = 0.5


def cexpm1(z: np.ndarray) -> np.ndarray:
    """``exp(z) - 1`` for complex ``z`` without cancellation near 0."""
    x, y = z.real, z.imag
    half = np.sin(0.5 * y)
    return (np.expm1(x) * np.cos(y) - 2.0 * half * half) + 1j * np.exp(x) * np.sin(y)


def expsum(
    coef: np.ndarray,
    lin: np.ndarray,
    rate: np.ndarray,
    shift: np.ndarray,
    sigma: np.ndarray,
    anchored: bool,
) -> np.ndarray:
    """Evaluate ``sum_j (coef_j + lin_j*sigma) * exp(rate_j*sigma + shift)``.

    ``coef``, ``lin`` and ``rate`` have shape ``(nk, nterms)``, ``shift`` has
    shape ``(nk,)`` and ``sigma`` shape ``(ns,)``; the result is ``(ns, nk)``.
    When ``anchored`` is true the caller guarantees ``sum_j coef_j == 0``
    exactly, and nodes with small exponents use ``expm1`` so the leading
    cancellation is done analytically.
    """
    s = sigma[:, None, None]
    arg = rate[None, :, :] * s
    weight = coef[None, :, :] + lin[None, :, :] * s
    out = np.sum(weight * np.exp(arg + shift[None, :, None]), axis=-1)
    if anchored:
        small = np.max(np.abs(arg), axis=-1) <= SMALL_EXPONENT
        if np.any(small):
            near = np.sum(coef[None] * cexpm1(arg) + lin[None] * s * np.exp(arg), axis=-1)
            out = np.where(small, near * np.exp(shift)[None, :], out)
    return out
