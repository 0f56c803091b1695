"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or as a script with
``python3 tests/test_acceptance.py``.
"""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from oseen_wake.analysis_core import kappa
from oseen_wake.asym_fields import AsymptoticCoefficients, eta_b, omega_b
from oseen_wake.oseen_kernels import extract_constants, kernel
from oseen_wake.verify import (
    CORRESPONDENCE_SETS,
    component_limit_records,
    correspondence_table,
    run_suite,
    synthetic_source,
)

COEFFS = AsymptoticCoefficients(1.0, 0.5)


@pytest.fixture
def announce(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")

    return emit


def test_criterion_1_fourier_direct_correspondence(announce):
    worst, failures, bad = 0.0, 0, []
    for names in CORRESPONDENCE_SETS:
        table = correspondence_table(names, COEFFS, ys=(5.0, 10.0, 50.0))
        worst = max(worst, table["max_rel_error"])
        failures += table["failures"]
        if table["failures"] or table["max_rel_error"] > 1e-6:
            bad.append("+".join(names))
    ok = not bad
    announce(1, ok, f"{len(CORRESPONDENCE_SETS)} asymptote sets, max rel error {worst:.2e} (<= 1e-6), "
                    f"{failures} failed rows")
    assert ok, bad


def test_criterion_2_special_values(announce):
    e = abs(eta_b(0.0) / (4 / math.pi) - 1)
    w = abs(omega_b(0.0) / (-12 / math.pi) - 1)
    ok = e <= 1e-8 and w <= 1e-8
    announce(2, ok, f"eta_b(0) rel err {e:.1e}, omega_b(0) rel err {w:.1e} (<= 1e-8)")
    assert ok


def test_criterion_3_kernel_nulls_and_identities(announce):
    rng = np.random.default_rng(2024)
    ks = 10.0 ** rng.uniform(-3, 2, 100)
    nulls = max(max(abs(kernel("h11", k, 0.0)), abs(kernel("g11", k, 0.0))) for k in ks)
    sigma = np.array([0.0, 0.05, 0.5, 2.0])
    ident = 0.0
    for k in ks:
        kap = complex(kappa(k))
        f, g = kernel("f11", k, sigma), kernel("g11", k, sigma)
        h, kk = kernel("h11", k, sigma), kernel("k11", k, sigma)
        ident = max(ident, float(np.max(np.abs(f - 1j * k / kap * g) / np.maximum(np.abs(f), 1.0))))
        ident = max(ident, float(np.max(np.abs(kk + abs(k) / (1j * k) * h) / np.maximum(np.abs(kk), 1.0))))
    ok = nulls <= 1e-12 and ident <= 1e-12
    announce(3, ok, f"100 random k: worst null {nulls:.1e}, worst identity residual {ident:.1e} (<= 1e-12)")
    assert ok


def test_criterion_4_constants(announce):
    c = extract_constants(synthetic_source("separable_indicator"))
    err = max(abs(c.c1 - 1.5), abs(c.c2 - 7 / 3))
    ok = err <= 1e-10
    announce(4, ok, f"c1 = {c.c1:.15g}, c2 = {c.c2:.15g}, error {err:.1e} (<= 1e-10)")
    assert ok


def test_criterion_5_component_limit(announce):
    source = synthetic_source("separable_indicator")
    records = component_limit_records(source, extract_constants(source))
    ratios = {r["params"]["k"]: r["residuals"]["decade_ratios"] for r in records}
    ok = all(r["passed"] for r in records) and len(records) == 3
    text = ", ".join(f"k={k:g}: " + "/".join(f"{x:.2f}" for x in v) for k, v in ratios.items())
    announce(5, ok, f"residual shrink per decade {text} (>= 2.5)")
    assert ok


def _suite_summary(records):
    claimed = [r for r in records if r["expected"] == "bounded"]
    controls = [r for r in records if r["expected"] == "growing"]
    failed = [r["check_id"] for r in records if not r["passed"]]
    return claimed, controls, failed


@pytest.mark.slow
def test_criterion_6_remainder_rates(announce):
    records = run_suite("remainder", controls=True)
    claimed, controls, failed = _suite_summary(records)
    ok = not failed and len(claimed) == 8 and len(controls) == 8
    announce(6, ok, f"{sum(r['passed'] for r in claimed)}/8 rows bounded, "
                    f"{sum(r['passed'] for r in controls)}/8 controls growing")
    assert ok, failed


@pytest.mark.slow
def test_criterion_7_proposition_suites(announce):
    parts, failed_all, ok = [], [], True
    for suite in ("semigroup", "convolution", "inequalities"):
        records = run_suite(suite, controls=True)
        claimed, controls, failed = _suite_summary(records)
        per_prop = {}
        for r in claimed:
            per_prop[r["check_id"]] = per_prop.get(r["check_id"], 0) + 1
        if suite != "inequalities" and min(per_prop.values()) < 5:
            ok = False
        if failed or not controls:
            ok = False
        failed_all += failed
        parts.append(f"{suite} {len(claimed) - sum(not r['passed'] for r in claimed)}/{len(claimed)} bounded, "
                     f"{sum(r['passed'] for r in controls)}/{len(controls)} controls growing")
    announce(7, ok, "; ".join(parts))
    assert ok, failed_all


def test_criterion_8_field_identities(announce):
    records = run_suite("field-identities", AsymptoticCoefficients(1.0, 0.5))
    kinds = {}
    for r in records:
        kind = r["check_id"].split(":")[0]
        kinds.setdefault(kind, []).append(r)
    ok = (all(r["passed"] for r in records) and len(kinds["divergence"]) == 5
          and len(kinds["laplacian"]) == 6 and "background_vorticity" in kinds and "wake_limit" in kinds)
    worst = {k: max(r["max_ratio"] for r in v) for k, v in kinds.items()}
    announce(8, ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))
    assert ok


def test_criterion_9_determinism(tmp_path, announce):
    cmd = [sys.executable, "-m", "oseen_wake", "verify", "--suite", "convolution,inequalities,formulas",
           "--suite", "field-identities", "--control", "out-of-range"]
    outputs = []
    for name in ("first.json", "second.json"):
        path = tmp_path / name
        run = subprocess.run(cmd + ["--output", str(path)], capture_output=True, text=True)
        assert run.returncode == 0, run.stderr
        outputs.append(path.read_bytes())
    json.loads(outputs[0])
    ok = outputs[0] == outputs[1]
    announce(9, ok, f"two verify runs, reports of {len(outputs[0])} bytes, byte-identical: {ok}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
