import json
import subprocess
import sys

import pytest

from oseen_wake.asym_fields import AsymptoticCoefficients, u_as
from oseen_wake.cli import main


def _rows(path):
    lines = path.read_text().splitlines()
    return lines[0], [[float(v) for v in line.split(",")] for line in lines[1:]]


def test_abc_eval_single_point_pass_through(tmp_path):
    out = tmp_path / "one.csv"
    argv = ["abc-eval", "--x-min", "0", "--x-max", "0", "--nx", "1", "--y-min", "10", "--y-max", "10",
            "--ny", "1", "--output", str(out)]
    assert main(argv) == 0
    header, rows = _rows(out)
    assert header == "x,y,u_as,v_as,omega_as"
    assert rows == [[0.0, 10.0, u_as(0.0, 10.0, AsymptoticCoefficients(1.0, 0.0)), rows[0][3], rows[0][4]]]
    meta = json.loads((tmp_path / "one.json").read_text())
    assert meta["rows"] == 1 and meta["columns"][2] == "u_as"


def test_abc_eval_zero_coefficients(tmp_path):
    out = tmp_path / "zero.csv"
    assert main(["abc-eval", "--c1", "0", "--nx", "5", "--ny", "3", "--output", str(out)]) == 0
    _, rows = _rows(out)
    assert len(rows) == 15
    assert all(r[2] == r[3] == r[4] == 0.0 for r in rows)


def test_abc_eval_default_grid_row_count(tmp_path):
    out = tmp_path / "grid.csv"
    assert main(["abc-eval", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 10202
    # y outer, x inner
    assert lines[1].startswith("-50,5,") and lines[2].startswith("-49,5,")


def test_abc_eval_rejects_bad_grids(tmp_path):
    out = str(tmp_path / "bad.csv")
    assert main(["abc-eval", "--y-min", "0.5", "--output", out]) == 2
    assert main(["abc-eval", "--nx", "1", "--output", out]) == 2
    assert main(["abc-eval", "--x-min", "3", "--x-max", "1", "--output", out]) == 2
    assert main(["abc-eval", "--output", str(tmp_path / "x.json")]) == 2


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"nx": 2, "ny": 1, "y_min": 20, "y_max": 20, "c1": 0.0}))
    out = tmp_path / "cfg.csv"
    assert main(["abc-eval", "--config", str(cfg), "--nx", "3", "--output", str(out)]) == 0
    _, rows = _rows(out)
    assert len(rows) == 3
    assert {r[1] for r in rows} == {20.0}
    assert all(r[2] == 0.0 for r in rows)


def test_unknown_config_key_is_usage_error(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert main(["abc-eval", "--config", str(cfg)]) == 2
    cfg.write_text("not json")
    assert main(["abc-eval", "--config", str(cfg)]) == 2


def test_verify_requires_a_suite():
    assert main(["verify"]) == 2
    assert main(["verify", "--suite", "nope"]) == 2
    assert main(["verify", "--suite", "inequalities", "--control", "maybe"]) == 2


def test_verify_controls_marked_expected_fail(tmp_path):
    out = tmp_path / "report.json"
    assert main(["verify", "--suite", "inequalities", "--control", "out-of-range", "--output", str(out)]) == 0
    report = json.loads(out.read_text())
    controls = [r for r in report["records"] if r["expected_fail"]]
    assert controls and all(r["verdict"] == "growing" and r["passed"] for r in controls)
    assert report["summary"]["failed"] == 0
    meta = json.loads((tmp_path / "report.meta.json").read_text())
    assert meta["non_canonical"] is True and "inequalities" in meta["runtime_seconds"]


def test_verify_field_identities_to_stdout(capsys):
    assert main(["verify", "--suite", "field-identities"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["records"] and all(r["passed"] for r in report["records"])


def test_verify_report_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["verify", "--suite", "inequalities,formulas", "--control", "out-of-range"]
    assert main(argv + ["--output", str(a)]) == 0
    assert main(argv + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_transform_check_psi_as1(tmp_path, capsys):
    out = tmp_path / "tc.json"
    argv = ["transform-check", "--name", "psi_as1", "--y", "10", "--x=-20,-5,0,5,20", "--output", str(out)]
    assert main(argv) == 0
    report = json.loads(out.read_text())
    assert len(report["rows"]) == 5 and report["max_rel_error"] <= 1e-6
    assert "max relative error" in capsys.readouterr().out


def test_transform_check_eta_upstream_is_zero(tmp_path):
    out = tmp_path / "eta.json"
    assert main(["transform-check", "--name", "eta_as1", "--y", "5", "--x=-40,-10", "--output", str(out)]) == 0
    for row in json.loads(out.read_text())["rows"]:
        assert row["direct"] == 0.0
        assert abs(row["transformed"]) <= 1e-12


def test_transform_check_zero_coefficients(tmp_path):
    out = tmp_path / "zero.json"
    assert main(["transform-check", "--name", "phi_as1+phi_as2", "--c1", "0", "--x=0,3", "--output", str(out)]) == 0
    for row in json.loads(out.read_text())["rows"]:
        assert row["direct"] == 0.0 and row["transformed"] == 0.0


def test_transform_check_rejects_names():
    assert main(["transform-check", "--name", "nope"]) == 2
    assert main(["transform-check", "--name", "dk_omega_as+omega_as1"]) == 2


@pytest.mark.parametrize(
    "argv, c1, c2",
    [
        ([], 1.5, 7 / 3),
        (["--amplitude", "0"], 0.0, 0.0),
        (["--amplitude", "-4"], -6.0, -28 / 3),
    ],
)
def test_constants(tmp_path, argv, c1, c2):
    out = tmp_path / "c.json"
    assert main(["constants", *argv, "--output", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["c1"] == pytest.approx(c1, rel=1e-12, abs=1e-15)
    assert data["c2"] == pytest.approx(c2, rel=1e-12, abs=1e-15)


def test_constants_rejects_unknown_family():
    assert main(["constants", "--family", "nope"]) == 2


def test_module_entry_point():
    run = subprocess.run([sys.executable, "-m", "oseen_wake", "constants"], capture_output=True, text=True)
    assert run.returncode == 0
    assert run.stdout.splitlines()[0] == "c1 = 1.5"
