"""Time the compiled kernel sum against the numpy fallback.

    python3 benchmarks/bench_backends.py [--repeat 5]

Prints one line per problem size and per layer (raw kernel sum, one
component evaluation) with the best-of-N time for each backend.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from oseen_wake import _fallback
from oseen_wake.oseen_kernels import kernel_terms

try:
    from oseen_wake import _speedups
except ImportError:
    _speedups = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def kernel_case(nk, ns):
    k = np.geomspace(1e-4, 1e2, nk) * np.where(np.arange(nk) % 2, 1.0, -1.0)
    coef, lin, rate, _anchored = kernel_terms("dk_f11", k)
    args = (np.ascontiguousarray(coef, dtype=complex), np.ascontiguousarray(lin, dtype=complex),
            np.ascontiguousarray(rate, dtype=complex), -np.abs(k).astype(complex) * 3.0,
            np.linspace(0.0, 4.0, ns))
    return args


def component_time(pure, repeat):
    # the backend is picked at import, so each setting gets a fresh interpreter
    code = (
        "import time, numpy as np\n"
        "from oseen_wake.oseen_kernels import component\n"
        "from oseen_wake.verify import synthetic_source\n"
        "q = synthetic_source('separable_indicator')\n"
        "k = np.geomspace(1e-3, 1e1, 64)\n"
        "best = 1e9\n"
        f"for _ in range({repeat}):\n"
        "    t0 = time.perf_counter(); component('omega11', q, k, 50.0)\n"
        "    best = min(best, time.perf_counter() - t0)\n"
        "print(best)\n"
    )
    env = dict(os.environ, OSEEN_WAKE_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _speedups is None:
        print("compiled extension not built; only the fallback is available")

    print(f"{'case':<28}{'python [ms]':>14}{'cython [ms]':>14}{'speedup':>10}")
    for nk, ns in ((16, 21), (128, 210), (512, 2100)):
        a = kernel_case(nk, ns)
        py = best_of(lambda: _fallback.expsum(*a, True), args.repeat)
        if _speedups is not None:
            cy = best_of(lambda: _speedups.expsum(*a, True), args.repeat)
            print(f"{f'expsum nk={nk} ns={ns}':<28}{py * 1e3:14.3f}{cy * 1e3:14.3f}{py / cy:10.2f}")
        else:
            print(f"{f'expsum nk={nk} ns={ns}':<28}{py * 1e3:14.3f}{'-':>14}{'-':>10}")

    py = component_time(True, args.repeat)
    cy = component_time(False, args.repeat) if _speedups is not None else float("nan")
    print(f"{'component omega11, 64 k':<28}{py * 1e3:14.3f}{cy * 1e3:14.3f}{py / cy:10.2f}")


if __name__ == "__main__":
    main()
