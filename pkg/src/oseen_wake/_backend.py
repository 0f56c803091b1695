"""Select the compiled kernel when available, else the numpy fallback.

Set ``OSEEN_WAKE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _fallback

BACKEND = "python"
_compiled = None

if os.environ.get("OSEEN_WAKE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _speedups as _compiled  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _compiled = None


def expsum(coef, lin, rate, shift, sigma, anchored: bool) -> np.ndarray:
    """Dispatch to the selected implementation (see ``_fallback.expsum``)."""
    coef = np.ascontiguousarray(coef, dtype=np.complex128)
    lin = np.ascontiguousarray(lin, dtype=np.complex128)
    rate = np.ascontiguousarray(rate, dtype=np.complex128)
    shift = np.ascontiguousarray(shift, dtype=np.complex128)
    sigma = np.ascontiguousarray(sigma, dtype=np.float64)
    if _compiled is not None:
        return _compiled.expsum(coef, lin, rate, shift, sigma, bool(anchored))
    return _fallback.expsum(coef, lin, rate, shift, sigma, bool(anchored))
