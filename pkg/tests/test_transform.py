import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oseen_wake.analysis_core import SpaceIndex, sqrt_minus_ik
from oseen_wake.quadrature import QuadratureBudget
from oseen_wake.transform import SpectralField, convolve, forward_fourier, inverse_fourier

TIGHT = QuadratureBudget(rel_tol=1e-11, abs_tol=1e-16, max_panels=100000)

poisson = SpectralField(lambda k, t: np.exp(-np.abs(k) * t), decay=SpaceIndex(2.0, 0.0, math.inf))
gaussian = SpectralField(lambda k, t: np.exp(-k * k) + 0j)


def test_poisson_kernel_at_origin():
    # (1/2pi) int exp(-|k|) dk = 1/pi
    res = inverse_fourier(poisson, 0.0, 1.0, TIGHT)
    assert res.value == pytest.approx(1 / math.pi, rel=1e-10)
    assert isinstance(res.value, float)


@pytest.mark.parametrize("x", [0.0, 0.5, 3.0, 40.0])
def test_poisson_kernel_profile(x):
    res = inverse_fourier(poisson, x, 2.0, TIGHT)
    assert res.value == pytest.approx(2.0 / (math.pi * (4.0 + x * x)), rel=1e-9)


def test_heat_type_kernel_quarter():
    # (1/2pi) int exp(-sqrt(-ik) - ikx) dk at x = 1/4 equals (x**-1.5/(2 sqrt(pi))) exp(-1/(4x))
    field = SpectralField(lambda k, t: np.exp(-sqrt_minus_ik(k)))
    res = inverse_fourier(field, 0.25, 1.0, TIGHT)
    assert res.value == pytest.approx(8 / (2 * math.sqrt(math.pi)) * math.exp(-1), rel=1e-9)


def test_zero_field():
    zero = SpectralField(lambda k, t: np.zeros_like(k, dtype=complex))
    assert inverse_fourier(zero, 1.0, 1.0).value == 0.0
    assert convolve(zero, gaussian, 0.3, 1.0).value == 0


def test_symmetry_check_mode_returns_complex():
    res = inverse_fourier(poisson, 1.0, 1.0, TIGHT, use_symmetry=False)
    assert abs(res.value.imag) < 1e-12
    assert res.value.real == pytest.approx(1 / (2 * math.pi), rel=1e-9)


def test_anticonjugate_field_gives_imaginary():
    f = SpectralField(lambda k, t: k * np.exp(-k * k) + 0j, symmetry="anticonjugate")
    res = inverse_fourier(f, 0.7, 1.0, TIGHT)
    assert res.value.real == 0.0
    # (1/2pi) int k exp(-k^2 - ikx) dk = -i x exp(-x^2/4) / (4 sqrt(pi))
    assert res.value.imag == pytest.approx(-0.7 * math.exp(-0.49 / 4) / (4 * math.sqrt(math.pi)), rel=1e-9)


def test_forward_gaussian_and_poisson_pair():
    assert forward_fourier(lambda x: np.exp(-x * x), 0.0, TIGHT).value == pytest.approx(math.sqrt(math.pi), rel=1e-10)
    res = forward_fourier(lambda x: 1 / (math.pi * (1 + x * x)), 1.0, TIGHT)
    assert res.value.real == pytest.approx(math.exp(-1), rel=1e-8)


def test_roundtrip():
    g = lambda x: np.exp(-x * x / 2)  # noqa: E731
    field = SpectralField(lambda k, t: np.array([forward_fourier(g, kk, TIGHT).value for kk in np.atleast_1d(k)]))
    # the forward transform is known in closed form; check it then invert the closed form
    for kk in (0.0, 0.8, 2.5):
        assert field(np.array([kk]), 0.0)[0].real == pytest.approx(math.sqrt(2 * math.pi) * math.exp(-kk * kk / 2), rel=1e-9)
    closed = SpectralField(lambda k, t: math.sqrt(2 * math.pi) * np.exp(-k * k / 2))
    for x in (0.0, 1.3):
        assert inverse_fourier(closed, x, 1.0, TIGHT).value == pytest.approx(g(x), rel=1e-9)


def test_gaussian_convolution_at_zero():
    # (1/2pi) int exp(-2 k'^2) dk' = 1/(2 sqrt(2 pi))
    res = convolve(gaussian, gaussian, 0.0, 1.0, TIGHT)
    assert res.value.real == pytest.approx(0.19947114020071635, rel=1e-10)


@settings(max_examples=15, deadline=None)
@given(st.floats(-5.0, 5.0))
def test_gaussian_convolution_closed_form(k):
    res = convolve(gaussian, gaussian, k, 1.0, TIGHT)
    assert res.value.real == pytest.approx(math.exp(-k * k / 2) / (2 * math.sqrt(2 * math.pi)), rel=1e-8, abs=1e-15)


def test_convolution_commutes():
    a = SpectralField(lambda k, t: np.exp(-np.abs(k) * t) * (1 + 0.3j * np.sign(k)))
    b = SpectralField(lambda k, t: np.exp(-sqrt_minus_ik(k) * t))
    for k in (0.4, -1.7):
        ab = convolve(a, b, k, 2.0, TIGHT).value
        ba = convolve(b, a, k, 2.0, TIGHT).value
        assert ab == pytest.approx(ba, rel=1e-9)


def test_convolution_with_narrow_bump_recovers_field():
    # a unit-mass bump of width eps acts as 2pi * delta
    eps = 1e-3
    bump = SpectralField(lambda k, t: 2 * math.pi * np.exp(-k * k / eps**2) / (eps * math.sqrt(math.pi)) + 0j)
    f = SpectralField(lambda k, t: np.exp(-k * k) + 0j)
    res = convolve(f, bump, 0.5, 1.0, TIGHT)
    assert res.value.real == pytest.approx(math.exp(-0.25), rel=1e-5)
