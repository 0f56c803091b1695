import math

import numpy as np
import pytest

from oseen_wake.analysis_core import SpaceIndex
from oseen_wake.asym_fields import AsymptoticCoefficients
from oseen_wake.oseen_kernels import SourceTerm
from oseen_wake.verify import (
    SUITES,
    Grid,
    PropositionCheck,
    RemainderCase,
    _decade_maxima,
    check_field_identities,
    check_inequality,
    check_remainder,
    proposition_checks,
    remainder_cases,
    run_suite,
    synthetic_source,
    verdict,
)

SMALL = Grid(1e-3, 10.0, 9, 1.0, 1e3, 13)


def test_verdict_rule():
    assert verdict([(1, 2.0), (10, 2.09)]) == "bounded"
    assert verdict([(1, 2.0), (10, 2.1)]) == "growing"
    assert verdict([(1, 2.0), (10, 1.0)]) == "bounded"
    assert verdict([(1, 2.0)]) == "inconclusive"
    assert verdict([(1, 2.0), (10, math.inf)]) == "inconclusive"
    assert verdict([(1, math.nan), (10, 1.0)]) == "inconclusive"
    assert verdict([(1, 0.0), (10, 0.0)]) == "bounded"


def test_decades_are_half_open_and_last_sample_merges():
    t = np.array([1.0, 3.0, 10.0, 30.0, 100.0])
    trend = _decade_maxima(t, np.array([1.0, 2.0, 3.0, 4.0, 5.0]))
    # 100 opens no decade of its own
    assert trend == [(1.0, 2.0), (10.0, 5.0)]
    trend = _decade_maxima(t[:-1], np.array([1.0, 2.0, 3.0, 4.0]))
    assert trend == [(1.0, 2.0), (10.0, 4.0)]


def test_grid_validation_and_shape():
    g = Grid(1e-2, 1.0, 3, 1.0, 10.0, 2)
    assert g.k.tolist() == pytest.approx([-1.0, -0.1, -0.01, 0.01, 0.1, 1.0])
    assert g.t.tolist() == pytest.approx([1.0, 10.0])
    with pytest.raises(ValueError):
        Grid(0.0, 1.0)
    with pytest.raises(ValueError):
        Grid(t_min=0.5)
    with pytest.raises(ValueError):
        Grid(nk=1)


def test_in_range_logic():
    assert PropositionCheck("sgL2", {"beta": 0.5}).expected == "bounded"
    assert PropositionCheck("sgL2", {"beta": 1.5}).expected == "growing"
    assert PropositionCheck("sgL3", {"delta": 1.0, "beta": 0.5}).expected == "growing"
    assert PropositionCheck("ineq_kfortinmu", {"p": 1.0, "alpha": 2.0}).expected == "bounded"
    assert PropositionCheck("ineq_kfortinmu", {"p": 1.0, "alpha": 2.0}, claim_shift=1.0).expected == "growing"
    assert PropositionCheck("conv_opt", {"alpha": 1.0, "s": 1.0, "r": 0.0}).expected == "growing"


def test_every_control_is_expected_to_grow():
    for suite, checks in proposition_checks(controls=True).items():
        plain = proposition_checks(controls=False)[suite]
        assert len(checks) > len(plain)
        assert all(c.expected == "bounded" for c in plain)
        assert any(c.expected == "growing" for c in checks)


def test_remainder_cases_shape():
    cases = remainder_cases()
    assert len(cases) == 16
    assert sum(c.expected == "growing" for c in cases) == 8
    assert len(remainder_cases(controls=False)) == 8


def test_inequality_checks_run_bounded():
    for check in proposition_checks(controls=False)["inequalities"]:
        rep = check_inequality(check)
        assert rep.verdict == "bounded", check.id


def test_remainder_scales_with_source_amplitude():
    case = RemainderCase("psi_order1", "psi11", ("psi_as1",), SpaceIndex(2.0, 1.0, math.inf))
    base = synthetic_source("separable_indicator")
    ref = check_remainder(case, base, SMALL)
    for a in (1e-2, 1e2):
        rep = check_remainder(case, base.scaled(a), SMALL)
        assert rep.max_ratio == pytest.approx(a * ref.max_ratio, rel=1e-8)
        assert rep.verdict == ref.verdict


def test_zero_source_has_zero_remainder():
    zero = SourceTerm(lambda k, s: np.zeros(np.broadcast(k, s).shape), (2.0, 3.0))
    case = RemainderCase("omega_order1", "omega11", ("omega_as1",), SpaceIndex(2.0, 3.5, 2.0))
    rep = check_remainder(case, zero, SMALL, AsymptoticCoefficients(0.0, 0.0))
    assert rep.max_ratio == 0.0
    assert rep.verdict == "bounded"


def test_synthetic_source_validation():
    with pytest.raises(ValueError):
        synthetic_source("nope")
    with pytest.raises(ValueError):
        synthetic_source("separable_indicator", {"width": 1.0})
    with pytest.raises(ValueError):
        synthetic_source("separable_indicator", {"s0": 1.0})
    q = synthetic_source("separable_indicator", {"amplitude": 2.0})
    assert q.moments == (3.0, pytest.approx(14 / 3))


def test_field_identities_pass():
    for item in check_field_identities(AsymptoticCoefficients(1.0, 0.5)):
        assert item["passed"], item


def test_run_suite_rejects_unknown():
    with pytest.raises(ValueError):
        run_suite("nope")
    assert "remainder" in SUITES


def test_formulas_suite_passes():
    records = run_suite("formulas")
    assert records and all(r["passed"] for r in records)
