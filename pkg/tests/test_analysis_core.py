import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oseen_wake.analysis_core import (
    CompositeWeight,
    SpaceIndex,
    WeightSpec,
    dawson,
    empirical_space_norm,
    erfcx,
    kappa,
    lambda_minus,
    mu,
    mu_bar,
    mu_tilde,
    space_weight,
    sqrt_minus_ik,
    weighted_ratio,
)

wavenumbers = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False).filter(lambda k: abs(k) > 1e-100)
heights = st.floats(min_value=1.0, max_value=1e4)


def test_roots_at_zero():
    assert kappa(0.0) == 0
    assert lambda_minus(0.0) == 0
    assert sqrt_minus_ik(0.0) == 0


def test_kappa_at_one_against_mpmath():
    ref = mp.sqrt(mp.mpc(1, -1))
    assert abs(kappa(1.0)) == pytest.approx(float(abs(ref)), rel=1e-15)
    assert abs(kappa(1.0)) == pytest.approx(2**0.25, rel=1e-15)
    assert kappa(1.0).real == pytest.approx(1.0986841134678100, rel=1e-14)
    assert lambda_minus(1.0) == pytest.approx(-1.0986841134678100, rel=1e-14)


def test_sqrt_minus_ik_at_one():
    assert sqrt_minus_ik(1.0) == pytest.approx(complex(math.sqrt(0.5), -math.sqrt(0.5)), rel=1e-15)
    assert sqrt_minus_ik(-4.0) == pytest.approx(complex(math.sqrt(2), math.sqrt(2)), rel=1e-15)


@given(wavenumbers)
def test_kappa_squares_back(k):
    assert kappa(k) ** 2 == pytest.approx(k * k - 1j * k, rel=1e-12)


@given(wavenumbers)
def test_kappa_conjugate_symmetric_and_principal(k):
    assert kappa(-k) == pytest.approx(np.conj(kappa(k)), rel=1e-15)
    assert kappa(k).real > 0
    assert sqrt_minus_ik(k).real > 0
    assert sqrt_minus_ik(k) ** 2 == pytest.approx(-1j * k, rel=1e-12)


@given(wavenumbers)
def test_lambda_minus_is_minus_real_kappa(k):
    assert lambda_minus(k) == pytest.approx(-kappa(k).real, rel=1e-13)


@given(wavenumbers)
def test_ordering_of_k_lambda_kappa(k):
    lam = abs(lambda_minus(k))
    kap = abs(kappa(k))
    assert abs(k) <= lam * (1 + 1e-14)
    assert lam <= kap * (1 + 1e-14)
    assert kap <= math.sqrt(2) * lam * (1 + 1e-14)


@given(wavenumbers, st.floats(min_value=0.0, max_value=1e3))
def test_lambda_semigroup_dominated_by_k_semigroup(k, sigma):
    assert math.exp(lambda_minus(k) * sigma) <= math.exp(-abs(k) * sigma) * (1 + 1e-14)


@given(wavenumbers)
def test_kappa_minus_sqrt_bounded_by_three_halves_power(k):
    # kappa - s = k**2 / (kappa + s) and |kappa + s| >= Re s = sqrt(|k|/2)
    s = sqrt_minus_ik(k)
    roundoff = 4e-16 * abs(s)
    assert abs(kappa(k) - s) <= math.sqrt(2) * abs(k) ** 1.5 * (1 + 1e-12) + roundoff


def test_mu_examples():
    assert mu(WeightSpec(2.0, 1.0), 0.0, 7.0) == 1.0
    assert mu(WeightSpec(2.0, 1.0), 1.0, 1.0) == 0.5
    # alpha = 0 jumps from 1 at k = 0 to 1/2 elsewhere
    assert mu(WeightSpec(0.0, 1.0), 0.0, 3.0) == 1.0
    assert mu(WeightSpec(0.0, 1.0), 1e-9, 3.0) == 0.5
    assert mu_bar(2.0, 2.0, 3.0) == pytest.approx(1 / 37)
    assert mu_tilde(2.0, 2.0, 3.0) == pytest.approx(1 / (1 + 18.0**2))


@given(st.floats(0.0, 6.0), st.floats(0.0, 3.0), wavenumbers, heights)
def test_mu_in_unit_interval_and_monotone(alpha, r, k, t):
    spec = WeightSpec(alpha, r)
    m = mu(spec, k, t)
    assert 0 < m <= 1
    assert mu(spec, 2 * k, t) <= m
    assert mu(spec, k, 2 * t) <= m


def test_weight_spec_rejects_negative():
    with pytest.raises(ValueError):
        WeightSpec(-1.0, 1.0)
    with pytest.raises(ValueError):
        WeightSpec(1.0, -1.0)


def test_space_index_rejects_both_infinite():
    with pytest.raises(ValueError):
        SpaceIndex(2.0, math.inf, math.inf)


def test_space_weight_drops_infinite_terms():
    k, t = 0.3, 5.0
    assert space_weight(SpaceIndex(2.0, 1.5, math.inf), k, t) == pytest.approx(t**-1.5 * mu_bar(2.0, k, t))
    assert space_weight(SpaceIndex(2.0, math.inf, 2.0), k, t) == pytest.approx(t**-2 * mu_tilde(2.0, k, t))
    both = space_weight(SpaceIndex(2.0, 1.0, 2.0), k, t)
    assert both == pytest.approx(t**-1 * mu_bar(2.0, k, t) + t**-2 * mu_tilde(2.0, k, t))


def test_shifted_index():
    idx = SpaceIndex(2.0, 1.0, math.inf).shifted(1.0, 1.0)
    assert (idx.p, idx.q) == (2.0, math.inf)


def test_composite_weight_matches_sum():
    w = CompositeWeight([(3.5, "bar", 2.0), (3.0, "tilde", 2.0)])
    k, t = np.array([0.1, 2.0]), np.array([[3.0], [30.0]])
    expected = t**-3.5 * mu_bar(2.0, k, t) + t**-3.0 * mu_tilde(2.0, k, t)
    assert np.allclose(w(k, t), expected, rtol=1e-14)
    with pytest.raises(ValueError):
        CompositeWeight([])


def test_empirical_norm_examples():
    k = np.logspace(-4, 2, 61)
    t = np.logspace(0, 3, 31)
    K, T = np.meshgrid(k, t)
    idx = SpaceIndex(2.0, 1.0, math.inf)
    assert empirical_space_norm(K, T, np.zeros_like(K), idx) == 0.0
    assert empirical_space_norm(K, T, T**-1.0 * mu_bar(2.0, K, T), idx) == pytest.approx(1.0, rel=1e-14)


def test_empirical_norm_exponential_profile():
    # (1 + z**2) exp(-z) decreases in z = |k| t, so the sup is at the smallest z
    idx = SpaceIndex(2.0, 0.0, math.inf)
    k = np.array([1.0, 2.0, 4.0])
    t = np.array([1.0, 2.0, 4.0])
    K, T = np.meshgrid(k, t)
    assert empirical_space_norm(K, T, np.exp(-K * T), idx) == pytest.approx(2 / math.e, rel=1e-14)
    K, T = np.meshgrid(np.logspace(-8, 1, 19), t)
    assert empirical_space_norm(K, T, np.exp(-K * T), idx) == pytest.approx(1.0, rel=1e-7)


def test_empirical_norm_rejects_bad_grids():
    idx = SpaceIndex(2.0, 1.0, math.inf)
    with pytest.raises(ValueError):
        empirical_space_norm(np.array([]), np.array([]), np.array([]), idx)
    with pytest.raises(ValueError):
        empirical_space_norm(np.array([0.0]), np.array([2.0]), np.array([1.0]), idx)
    with pytest.raises(ValueError):
        weighted_ratio(np.array([1.0]), np.array([0.5]), np.array([1.0]), idx)


def test_erfcx_dawson_values():
    assert erfcx(0.0) == 1.0
    assert dawson(0.0) == 0.0
    assert erfcx(1.0) == pytest.approx(0.42758357615580700, rel=1e-14)


@pytest.mark.parametrize("w", [0.0, 1e-3, 0.3, 1.0, 2.5, 7.0, 20.0, 50.0])
def test_erfcx_dawson_against_mpmath(w):
    mp.mp.dps = 40
    ref_x = mp.exp(mp.mpf(w) ** 2) * mp.erfc(w)
    ref_d = mp.sqrt(mp.pi) / 2 * mp.exp(-mp.mpf(w) ** 2) * mp.erfi(w)
    assert erfcx(w) == pytest.approx(float(ref_x), rel=1e-12)
    assert dawson(w) == pytest.approx(float(ref_d), rel=1e-12, abs=1e-300)


@settings(max_examples=50)
@given(st.floats(0.0, 5.0))
def test_erfcx_identity(w):
    assert erfcx(w) * math.exp(-w * w) == pytest.approx(math.erfc(w), rel=1e-12, abs=1e-300)
