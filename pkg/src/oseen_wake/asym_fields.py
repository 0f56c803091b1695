"""Self-similar wake profiles, the asymptotic velocity and vorticity fields,
and the Fourier-side asymptotes they come from.

Profiles are functions of one similarity variable: ``x/y`` for the potential
parts and ``x/y**2`` for the viscous wake.  The two wake-correction profiles
``eta_b`` and ``omega_b`` are written with ``erfcx`` (upstream) and Dawson's
function (downstream).  Their direct formulas lose about ``eps/z**3`` in
relative accuracy as ``z -> 0``, so near the origin they switch to the
asymptotic series, whose integer coefficients are generated exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .analysis_core import SpaceIndex, dawson, erfcx, sqrt_minus_ik
from .transform import SpectralField

__all__ = [
    "AsymptoticCoefficients",
    "phi1",
    "psi1",
    "phi21",
    "phi22",
    "psi21",
    "psi22",
    "eta_w",
    "omega_w",
    "eta_b",
    "omega_b",
    "u_as",
    "v_as",
    "omega_as",
    "ASYMPTOTE_NAMES",
    "fourier_asymptote",
    "asymptote_field",
    "direct_counterpart",
    "SERIES_RADIUS",
]

_SQRT_PI = math.sqrt(math.pi)

# |z| below this uses the series for eta_b and omega_b
SERIES_RADIUS = 5e-3
_SERIES_TERMS = 30


@dataclass(frozen=True)
class AsymptoticCoefficients:
    """The two source moments that scale the asymptotic fields."""

    c1: float
    c2: float


def _as_array(z):
    return np.asarray(z, dtype=float)


def _wrap(values, like):
    return values if np.ndim(like) else float(values)


# potential-flow profiles (similarity variable x/y)

def _r(z):
    return np.sqrt(1.0 + z * z)


def _r_minus_z(z, r):
    # r - z without cancellation for large positive z
    with np.errstate(divide="ignore"):
        return np.where(z > 0, 1.0 / (r + np.abs(z)), r - z)


def _r_plus_z(z, r):
    with np.errstate(divide="ignore"):
        return np.where(z < 0, 1.0 / (r + np.abs(z)), r + z)


def phi1(z):
    z = _as_array(z)
    r = _r(z)
    numerator = r + 1.0 + z * _r_minus_z(z, r) + 2.0 * z
    out = -numerator / (4.0 * _SQRT_PI * r**3 * np.sqrt(r + 1.0))
    return _wrap(out, z)


def psi1(z):
    z = _as_array(z)
    r = _r(z)
    numerator = r + 1.0 - z * _r_plus_z(z, r) - 2.0 * z
    out = -numerator / (4.0 * _SQRT_PI * r**3 * np.sqrt(r + 1.0))
    return _wrap(out, z)


def phi21(z):
    z = _as_array(z)
    return _wrap(-2.0 * z / (math.pi * (1.0 + z * z) ** 2), z)


def phi22(z):
    z = _as_array(z)
    return _wrap((1.0 - z * z) / (2.0 * math.pi * (1.0 + z * z) ** 2), z)


def psi21(z):
    z = _as_array(z)
    return _wrap(-(1.0 - z * z) / (math.pi * (1.0 + z * z) ** 2), z)


def psi22(z):
    z = _as_array(z)
    return _wrap(-z / (math.pi * (1.0 + z * z) ** 2), z)


# viscous wake profiles (similarity variable x/y**2)

def _log_gauss(z, power):
    # exp(-1/(4z)) * z**power for z > 0, computed in log space
    with np.errstate(divide="ignore", invalid="ignore"):
        zp = np.where(z > 0, z, 1.0)
        return np.where(z > 0, np.exp(-0.25 / zp + power * np.log(zp)), 0.0)


def eta_w(z):
    z = _as_array(z)
    return _wrap(-_log_gauss(z, -1.5) / (2.0 * _SQRT_PI), z)


def omega_w(z):
    z = _as_array(z)
    return _wrap((1.0 - 2.0 * z) * _log_gauss(z, -2.5) / (4.0 * _SQRT_PI), z)


def _series_coefficients(n_terms: int):
    """Exact power-series coefficients of ``pi*eta_b`` and ``pi*omega_b`` at 0.

    With ``A(z) = sum_n (2n-1)!! 2**(n+1) z**(n+1)``, the brackets of the two
    profiles are ``2z - (1-2z) A`` and ``2z(1-4z) - (1-6z) A`` up to an
    exponentially small term; their low orders cancel identically.
    """
    a = []
    double_factorial = 1
    for n in range(n_terms + 4):
        a.append(double_factorial * 2 ** (n + 1))
        double_factorial *= 2 * n + 1
    eta = [Fraction(-(-a[m - 1] + 2 * a[m - 2]), 4) for m in range(3, n_terms + 3)]
    omega = [Fraction(-a[m - 1] + 6 * a[m - 2], 8) for m in range(4, n_terms + 4)]
    return np.array([float(c) for c in eta]), np.array([float(c) for c in omega])


_ETA_SERIES, _OMEGA_SERIES = _series_coefficients(_SERIES_TERMS)


def _horner(coefficients, z):
    out = np.zeros_like(z)
    for c in coefficients[::-1]:
        out = out * z + c
    return out


def _wake_bracket_e(z):
    """``E(z)`` with ``sqrt(pi|z|) E`` the non-polynomial part of both brackets."""
    w = 1.0 / np.sqrt(4.0 * np.abs(z))
    upstream = erfcx(w)
    downstream = np.exp(-w * w) - (2.0 / _SQRT_PI) * dawson(w)
    return np.where(z > 0, downstream, upstream)


def _profile_b(z, which: str):
    z = _as_array(z)
    out = np.empty_like(z)
    small = np.abs(z) < SERIES_RADIUS
    if np.any(small):
        zs = z[small]
        if which == "eta":
            poly = _horner(_ETA_SERIES, zs)
            extra = -_SQRT_PI * (1.0 - 2.0 * zs) * _log_gauss(zs, -2.5) / 4.0
        else:
            poly = _horner(_OMEGA_SERIES, zs)
            extra = _SQRT_PI * (1.0 - 6.0 * zs) * _log_gauss(zs, -3.5) / 8.0
        out[small] = (poly + extra) / math.pi
    big = ~small
    if np.any(big):
        zb = z[big]
        root = np.sqrt(math.pi * np.abs(zb)) * _wake_bracket_e(zb)
        if which == "eta":
            out[big] = -(2.0 * zb + root * (1.0 - 2.0 * zb)) / (4.0 * math.pi * zb**3)
        else:
            out[big] = (2.0 * zb * (1.0 - 4.0 * zb) + root * (1.0 - 6.0 * zb)) / (8.0 * math.pi * zb**4)
    return _wrap(out, z)


def eta_b(z):
    """Second-order wake profile of the vorticity stream part; smooth through 0."""
    return _profile_b(z, "eta")


def omega_b(z):
    """Second-order wake profile of the vorticity; smooth through 0."""
    return _profile_b(z, "omega")


# asymptotic fields

def _check_y(y):
    y = _as_array(y)
    if np.any(~(y > 0)):
        raise ValueError("y must be positive")
    return y


def _wake_parts(x, y, coeffs: AsymptoticCoefficients):
    # the two viscous terms; the second pair is the vorticity itself
    z = x / (y * y)
    c1 = coeffs.c1
    eta = c1 * eta_w(z) / y**2 + c1 * eta_b(z) / y**3
    omega = c1 * omega_w(z) / y**3 + c1 * omega_b(z) / y**4
    return eta, omega


def u_as(x, y, coeffs: AsymptoticCoefficients):
    """Streamwise velocity correction at ``(x, y)``; ``y > 0``."""
    x = _as_array(x)
    y = _check_y(y)
    z = x / y
    potential = coeffs.c1 * phi1(z) / y**1.5 + (coeffs.c1 * phi21(z) + coeffs.c2 * phi22(z)) / y**2
    eta, _ = _wake_parts(x, y, coeffs)
    return _wrap(potential - eta, x + y)


def v_as(x, y, coeffs: AsymptoticCoefficients):
    """Transverse velocity correction at ``(x, y)``; ``y > 0``."""
    x = _as_array(x)
    y = _check_y(y)
    z = x / y
    potential = coeffs.c1 * psi1(z) / y**1.5 + (coeffs.c1 * psi21(z) + coeffs.c2 * psi22(z)) / y**2
    _, omega = _wake_parts(x, y, coeffs)
    return _wrap(potential + omega, x + y)


def omega_as(x, y, coeffs: AsymptoticCoefficients):
    """Vorticity at ``(x, y)``: exactly the wake part shared with ``v_as``."""
    x = _as_array(x)
    y = _check_y(y)
    _, omega = _wake_parts(x, y, coeffs)
    return _wrap(omega, x + y)


# Fourier-side asymptotes

ASYMPTOTE_NAMES = (
    "psi_as1",
    "psi_as2",
    "phi_as1",
    "phi_as2",
    "eta_as1",
    "eta_as2",
    "omega_as1",
    "omega_as2",
    "dk_omega_as",
)

_SINGULAR_AT_ZERO = {"eta_as2", "dk_omega_as"}


def fourier_asymptote(name: str, k, t, coeffs: AsymptoticCoefficients):
    """Closed-form large-``t`` asymptote ``name`` at wavenumber ``k``, time ``t``.

    ``eta_as2`` and ``dk_omega_as`` are singular at ``k = 0`` and reject it;
    the others take their continuous limit there.
    """
    if name not in ASYMPTOTE_NAMES:
        raise ValueError(f"unknown asymptote {name!r}; expected one of {ASYMPTOTE_NAMES}")
    k_arr = _as_array(k)
    t = np.asarray(t, dtype=float)
    zero = k_arr == 0
    if name in _SINGULAR_AT_ZERO and np.any(zero):
        raise ValueError(f"{name} is singular at k = 0")
    c1, c2 = coeffs.c1, coeffs.c2
    a = np.abs(k_arr)
    ik = 1j * k_arr
    safe_ik = np.where(zero, 1j, ik)
    root = sqrt_minus_ik(k_arr)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        if name == "psi_as1":
            out = -c1 * root * np.exp(-a * t)
        elif name == "phi_as1":
            out = c1 * np.where(zero, 0.0, (a / safe_ik) * root) * np.exp(-a * t)
        elif name == "psi_as2":
            out = -(c1 * a + 0.5 * c2 * ik) * np.exp(-a * t)
        elif name == "phi_as2":
            out = -(c1 * ik - 0.5 * c2 * a) * np.exp(-a * t)
        elif name == "eta_as1":
            out = -c1 * np.exp(-root * t)
        elif name == "omega_as1":
            out = c1 * root * np.exp(-root * t)
        elif name == "eta_as2":
            out = -c1 * (a - ik) / root * np.exp(-root * t)
        elif name == "omega_as2":
            out = c1 * (a - ik) * np.exp(-root * t)
        else:
            out = 0.5j * c1 * (1.0 - 1.0 / (root * t)) * t * np.exp(-root * t)
    out = np.asarray(out, dtype=complex)
    return out if (np.ndim(k) or np.ndim(t)) else complex(out)


_DECAY_HINTS = {
    "psi_as1": (0.5, math.inf),
    "phi_as1": (0.5, math.inf),
    "psi_as2": (1.0, math.inf),
    "phi_as2": (1.0, math.inf),
    "eta_as1": (math.inf, 0.0),
    "omega_as1": (math.inf, 1.0),
    "eta_as2": (math.inf, 1.0),
    "omega_as2": (math.inf, 2.0),
}


def asymptote_field(name: str, coeffs: AsymptoticCoefficients, alpha: float = 6.0) -> SpectralField:
    """The asymptote ``name`` as a ``SpectralField`` with symmetry and decay metadata.

    ``dk_omega_as`` is anticonjugate: its inverse transform is purely
    imaginary.  It has no decay hint because it is unbounded at ``k = 0``.
    """
    if name not in ASYMPTOTE_NAMES:
        raise ValueError(f"unknown asymptote {name!r}")

    def evaluator(k, t):
        return fourier_asymptote(name, k, t, coeffs)

    if name == "dk_omega_as":
        return SpectralField(evaluator, None, "anticonjugate")
    p, q = _DECAY_HINTS[name]
    return SpectralField(evaluator, SpaceIndex(alpha, p, q), "conjugate")


def direct_counterpart(name: str, x, y, coeffs: AsymptoticCoefficients):
    """The physical-space function whose Fourier transform is asymptote ``name``.

    Real for every name except ``dk_omega_as``, whose counterpart is the
    purely imaginary ``i x`` times the first wake vorticity term.
    """
    x = _as_array(x)
    y = _check_y(y)
    c1, c2 = coeffs.c1, coeffs.c2
    zp = x / y
    zw = x / (y * y)
    table = {
        "psi_as1": lambda: c1 * psi1(zp) / y**1.5,
        "phi_as1": lambda: c1 * phi1(zp) / y**1.5,
        "psi_as2": lambda: (c1 * psi21(zp) + c2 * psi22(zp)) / y**2,
        "phi_as2": lambda: (c1 * phi21(zp) + c2 * phi22(zp)) / y**2,
        "eta_as1": lambda: c1 * eta_w(zw) / y**2,
        "omega_as1": lambda: c1 * omega_w(zw) / y**3,
        "eta_as2": lambda: c1 * eta_b(zw) / y**3,
        "omega_as2": lambda: c1 * omega_b(zw) / y**4,
        "dk_omega_as": lambda: 1j * x * c1 * omega_w(zw) / y**3,
    }
    if name not in table:
        raise ValueError(f"unknown asymptote {name!r}")
    out = np.asarray(table[name]())
    if np.ndim(x + y):
        return out
    return complex(out) if np.iscomplexobj(out) else float(out)
