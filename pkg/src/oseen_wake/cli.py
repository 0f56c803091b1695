"""Command-line entry point ``oseen-wake``.

Every command takes an optional JSON config (``--config run.json``) holding
the same keys as its flags, with underscores; flags given on the command line
win over the file.  Unknown keys are an error.

Exit codes: 0 success, 1 a verification failed, 2 usage or config error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import __version__
from ._backend import BACKEND
from .asym_fields import (
    ASYMPTOTE_NAMES,
    SERIES_RADIUS,
    AsymptoticCoefficients,
    omega_as,
    u_as,
    v_as,
)
from .oseen_kernels import extract_constants
from .quadrature import NonConvergenceError, QuadratureBudget
from .verify import SUITES, correspondence_table, run_suite, synthetic_source

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 1, 2, 3

# below this height the far-field expansion is a poor description of the flow
Y_WARN = 5.0


class UsageError(Exception):
    pass


def _float_list(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    if isinstance(text, (int, float)):
        return [float(text)]
    return [float(v) for v in str(text).split(",") if v.strip()]


def _str_list(text) -> list[str]:
    if isinstance(text, (list, tuple)):
        out = []
        for item in text:
            out += _str_list(item)
        return out
    return [v.strip() for v in str(text).split(",") if v.strip()]


# per command: key -> (converter, default, help)
OPTIONS: dict[str, dict[str, tuple[Callable, Any, str]]] = {
    "abc-eval": {
        "x_min": (float, -50.0, "left end of the x grid"),
        "x_max": (float, 50.0, "right end of the x grid"),
        "nx": (int, 101, "number of x samples"),
        "y_min": (float, 5.0, "lowest y row"),
        "y_max": (float, 105.0, "highest y row"),
        "ny": (int, 101, "number of y samples"),
        "c1": (float, 1.0, "first asymptotic constant"),
        "c2": (float, 0.0, "second asymptotic constant"),
        "y_floor": (float, 1.0, "smallest admissible y"),
        "output": (str, "abc_fields.csv", "CSV path; metadata goes next to it as .json"),
    },
    "transform-check": {
        "name": (str, "psi_as1", "asymptote name, or several joined with '+'"),
        "y": (_float_list, [10.0], "comma-separated y values"),
        "x": (_float_list, None, "comma-separated x values (default: 21 points scaled to y)"),
        "c1": (float, 1.0, "first asymptotic constant"),
        "c2": (float, 0.0, "second asymptotic constant"),
        "rel_tol": (float, 1e-10, "quadrature relative tolerance"),
        "abs_tol": (float, 1e-20, "quadrature absolute tolerance"),
        "max_panels": (int, 400000, "quadrature panel budget"),
        "tolerance": (float, 1e-6, "accepted relative error"),
        "output": (str, None, "optional JSON report path"),
    },
    "constants": {
        "family": (str, "separable_indicator", "separable_indicator or separable_smooth_bump"),
        "amplitude": (float, 1.0, "source amplitude"),
        "s0": (float, 2.0, "start of the source support"),
        "s1": (float, 3.0, "end of the source support"),
        "rel_tol": (float, 1e-12, "quadrature relative tolerance"),
        "abs_tol": (float, 1e-15, "quadrature absolute tolerance"),
        "output": (str, None, "optional JSON path"),
    },
    "verify": {
        "suite": (_str_list, None, f"suites to run, comma-separated or repeated; 'all' or any of {', '.join(SUITES)}"),
        "control": (str, "none", "'out-of-range' adds the falsification controls"),
        "c1": (float, 1.0, "first asymptotic constant for the field suites"),
        "c2": (float, 0.0, "second asymptotic constant for the field suites"),
        "alpha": (float, 2.0, "weight exponent of the remainder rows"),
        "delta": (float, 0.1, "small loss in the remainder decay exponents"),
        "output": (str, None, "JSON report path (stdout if omitted)"),
    },
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oseen-wake", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "abc-eval": "evaluate the asymptotic fields on a grid and write CSV",
        "transform-check": "compare inverse transforms of Fourier asymptotes with direct profiles",
        "constants": "moments c1, c2 of a synthetic source",
        "verify": "run verification suites and write a JSON report",
    }
    for command, options in OPTIONS.items():
        p = sub.add_parser(command, help=helps[command])
        p.add_argument("--config", help="JSON file with default values for the flags below")
        for key, (_conv, default, text) in options.items():
            flag = "--" + key.replace("_", "-")
            action = "append" if key == "suite" else "store"
            p.add_argument(flag, dest=key, default=None, action=action,
                           help=f"{text} (default: {default})")
    return parser


def _resolve(command: str, args: argparse.Namespace) -> dict:
    options = OPTIONS[command]
    values = {key: default for key, (_c, default, _h) in options.items()}
    if args.config:
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise UsageError("config must be a JSON object")
        unknown = sorted(set(loaded) - set(options))
        if unknown:
            raise UsageError(f"unknown config keys for {command}: {', '.join(unknown)}")
        values.update(loaded)
    for key in options:
        flag = getattr(args, key)
        if flag is not None:
            values[key] = flag
    out = {}
    for key, (conv, _d, _h) in options.items():
        value = values[key]
        if value is None:
            out[key] = None
            continue
        try:
            out[key] = conv(value)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad value for {key}: {value!r}") from exc
    return out


def _clean(obj):
    """JSON-safe copy: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _clean(obj.real), "im": _clean(obj.imag)}
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    return obj


def _dumps(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _write(path: str | Path, text: str) -> None:
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _axis(lo: float, hi: float, n: int, name: str) -> np.ndarray:
    if n < 1:
        raise UsageError(f"n{name} must be at least 1")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise UsageError(f"{name} bounds must be finite")
    if n == 1:
        if lo != hi:
            raise UsageError(f"a single {name} sample needs {name}_min == {name}_max")
        return np.array([lo])
    if not hi > lo:
        raise UsageError(f"{name}_max must exceed {name}_min")
    return np.linspace(lo, hi, n)


def cmd_abc_eval(cfg: dict) -> int:
    xs = _axis(cfg["x_min"], cfg["x_max"], cfg["nx"], "x")
    ys = _axis(cfg["y_min"], cfg["y_max"], cfg["ny"], "y")
    if not cfg["y_floor"] > 0:
        raise UsageError("y_floor must be positive")
    if ys[0] < cfg["y_floor"]:
        raise UsageError(f"y_min = {ys[0]} is below the floor {cfg['y_floor']}")
    if ys[0] < Y_WARN:
        print(f"warning: rows with y < {Y_WARN} are outside the range where the asymptotes are accurate",
              file=sys.stderr)
    coeffs = AsymptoticCoefficients(cfg["c1"], cfg["c2"])
    lines = ["x,y,u_as,v_as,omega_as"]
    for y in ys:
        yy = np.full_like(xs, y)
        u = np.asarray(u_as(xs, yy, coeffs), dtype=float)
        v = np.asarray(v_as(xs, yy, coeffs), dtype=float)
        w = np.asarray(omega_as(xs, yy, coeffs), dtype=float)
        for row in zip(xs, yy, u, v, w):
            lines.append(",".join("%.17g" % value for value in row))
    out = Path(cfg["output"])
    if out.suffix == ".json":
        raise UsageError("the CSV output must not end in .json; that name is taken by the metadata file")
    _write(out, "\n".join(lines) + "\n")
    meta = {
        "columns": ["x", "y", "u_as", "v_as", "omega_as"],
        "row_order": "y outer, x inner",
        "number_format": "%.17g",
        "rows": int(xs.size * ys.size),
        "x": {"min": float(xs[0]), "max": float(xs[-1]), "n": int(xs.size)},
        "y": {"min": float(ys[0]), "max": float(ys[-1]), "n": int(ys.size)},
        "coefficients": {"c1": coeffs.c1, "c2": coeffs.c2},
        "tool": {"name": "oseen-wake", "version": __version__},
        "tolerances": {"evaluation": "closed form", "wake_series_radius": SERIES_RADIUS},
    }
    _write(_meta_path(out, ".json"), _dumps(meta))
    print(f"wrote {meta['rows']} rows to {out}")
    return EXIT_OK


def _meta_path(path: Path, suffix: str) -> Path:
    if path.suffix in (".csv", ".json"):
        return path.with_suffix(suffix)
    return path.with_name(path.name + suffix)


def _fmt(value) -> str:
    if value is None:
        return "failed"
    if isinstance(value, dict):
        return f"{value['re']:.10e}{value['im']:+.10e}j"
    return f"{value:.10e}"


def cmd_transform_check(cfg: dict) -> int:
    names = tuple(n.strip() for n in cfg["name"].split("+") if n.strip())
    bad = [n for n in names if n not in ASYMPTOTE_NAMES]
    if not names or bad:
        raise UsageError(f"unknown asymptote {bad or cfg['name']!r}; choose from {', '.join(ASYMPTOTE_NAMES)}")
    if len({n == "dk_omega_as" for n in names}) > 1:
        raise UsageError("dk_omega_as cannot be summed with the other asymptotes")
    if not cfg["y"] or any(not y > 0 for y in cfg["y"]):
        raise UsageError("y values must be positive")
    try:
        budget = QuadratureBudget(cfg["rel_tol"], cfg["abs_tol"], cfg["max_panels"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    coeffs = AsymptoticCoefficients(cfg["c1"], cfg["c2"])
    table = correspondence_table(names, coeffs, cfg["y"], cfg["x"], budget)
    print(f"{'x':>14} {'y':>8} {'direct':>40} {'ift':>40} {'abs_diff':>12}")
    for row in table["rows"]:
        diff = "failed" if row["abs_diff"] is None else f"{row['abs_diff']:.3e}"
        print(f"{row['x']:14.6g} {row['y']:8.4g} {_fmt(row['direct']):>40} {_fmt(row['transformed']):>40} {diff:>12}")
    print(f"max relative error {table['max_rel_error']:.3e} (tolerance {cfg['tolerance']:.1e}), "
          f"{table['failures']} failed rows")
    report = dict(table, tolerance=cfg["tolerance"], coefficients={"c1": coeffs.c1, "c2": coeffs.c2})
    if cfg["output"]:
        _write(cfg["output"], _dumps(report))
    if table["failures"]:
        return EXIT_NONCONVERGENCE
    return EXIT_OK if table["max_rel_error"] <= cfg["tolerance"] else EXIT_FAILED


def cmd_constants(cfg: dict) -> int:
    try:
        source = synthetic_source(cfg["family"], {"amplitude": cfg["amplitude"], "s0": cfg["s0"], "s1": cfg["s1"]})
        budget = QuadratureBudget(cfg["rel_tol"], cfg["abs_tol"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    coeffs = extract_constants(source, budget)
    print(f"c1 = {coeffs.c1:.17g}")
    print(f"c2 = {coeffs.c2:.17g}")
    if cfg["output"]:
        payload = {"c1": coeffs.c1, "c2": coeffs.c2,
                   "source": {k: cfg[k] for k in ("family", "amplitude", "s0", "s1")}}
        _write(cfg["output"], _dumps(payload))
    return EXIT_OK


def cmd_verify(cfg: dict) -> int:
    requested = cfg["suite"] or []
    if not requested:
        raise UsageError("no suite selected; pass --suite (or 'all')")
    suites: list[str] = []
    for name in requested:
        for item in (SUITES if name == "all" else (name,)):
            if item not in SUITES:
                raise UsageError(f"unknown suite {item!r}; choose from {', '.join(SUITES)} or all")
            if item not in suites:
                suites.append(item)
    if cfg["control"] not in ("none", "out-of-range"):
        raise UsageError("control must be 'none' or 'out-of-range'")
    controls = cfg["control"] == "out-of-range"
    coeffs = AsymptoticCoefficients(cfg["c1"], cfg["c2"])

    records: list[dict] = []
    runtimes: dict[str, float] = {}
    code = EXIT_OK
    for suite in suites:
        start = time.perf_counter()
        try:
            recs = run_suite(suite, coeffs, controls=controls, delta=cfg["delta"], alpha=cfg["alpha"])
        except NonConvergenceError as exc:
            recs = [{"suite": suite, "check_id": suite, "params": {}, "max_ratio": None, "verdict": "error",
                     "residuals": {"message": str(exc)}, "expected": None, "passed": False}]
            code = EXIT_NONCONVERGENCE
        runtimes[suite] = time.perf_counter() - start
        for rec in recs:
            rec["expected_fail"] = rec.get("expected") == "growing"
            records.append(rec)
            if not rec["passed"] and code == EXIT_OK:
                code = EXIT_FAILED

    failed = [r for r in records if not r["passed"]]
    report = {
        "tool": {"name": "oseen-wake", "version": __version__},
        "config": {k: v for k, v in cfg.items() if k != "output"},
        "suites": suites,
        "records": records,
        "summary": {"total": len(records), "passed": len(records) - len(failed), "failed": len(failed)},
    }
    text = _dumps(report)
    if cfg["output"]:
        out = Path(cfg["output"])
        _write(out, text)
        meta = {"non_canonical": True, "runtime_seconds": runtimes, "backend": BACKEND,
                "threads": os.environ.get("OSEEN_WAKE_THREADS", "1"),
                "finished_at": time.strftime("%Y-%m-%dT%H:%M:%S%z")}
        _write(_meta_path(out, ".meta.json"), _dumps(meta))
        for rec in records:
            status = "PASS" if rec["passed"] else "FAIL"
            tag = " (control)" if rec["expected_fail"] else ""
            print(f"{status} {rec['suite']}/{rec['check_id']}{tag}: {rec['verdict']}")
        print(f"{report['summary']['passed']}/{len(records)} checks passed; report in {out}")
    else:
        sys.stdout.write(text)
    return code


COMMANDS = {
    "abc-eval": cmd_abc_eval,
    "transform-check": cmd_transform_check,
    "constants": cmd_constants,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)  # exits with 2 on malformed flags
    try:
        cfg = _resolve(args.command, args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"oseen-wake {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonConvergenceError as exc:
        print(f"oseen-wake {args.command}: numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except ValueError as exc:
        print(f"oseen-wake {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
