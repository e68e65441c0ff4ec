"""Benchmark the compiled kernels against the pure numpy fallback.

Micro-benchmarks call both kernel modules directly; the end-to-end scan
comparison re-runs this interpreter with NUCRANGE_FORCE_PURE=1 so the
import-time backend selection is exercised for real.

Usage: python benchmarks/compare_backends.py
"""

import math
import os
import subprocess
import sys
import time

import numpy as np

from nucrange._kernels import pure

try:
    from nucrange._kernels import _fast
except ImportError:
    _fast = None

CURVE = (0.3, -0.2, 0.8, 1.1, 0.4, -0.3, 0.9)
CONIC = (0.1, 0.05, 1.25, 1.3, 0.9, -0.2)


def timeit(fn, repeat=5):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels():
    phis = np.linspace(0, 2 * math.pi, 513)
    rows = []
    for label, mod in (("pure", pure), ("cython", _fast)):
        if mod is None:
            continue
        t_resid = timeit(lambda m=mod: [m.residual_on_curve(CURVE, CONIC, phis) for _ in range(200)])
        g = mod.residual_on_curve(CURVE, CONIC, phis)
        bracket = next(
            (i for i in range(512) if (g[i] < 0) != (g[i + 1] < 0)), None
        )
        t_bisect = timeit(
            lambda m=mod: [
                m.bisect_on_curve(
                    CURVE, CONIC, phis[bracket], phis[bracket + 1], g[bracket], 1e-13, 200
                )
                for _ in range(2000)
            ]
        )
        rows.append((label, t_resid / 200 * 1e6, t_bisect / 2000 * 1e6))
    print(f"{'backend':<8} {'residual/513pts':>18} {'bisect/root':>14}")
    for label, resid_us, bisect_us in rows:
        print(f"{label:<8} {resid_us:>15.1f} us {bisect_us:>11.1f} us")


SCAN_SNIPPET = """
import time
import nucrange as nr
ch = nr.ADChannel(nr.ADParams(0.5, 0.7))
vec = tuple(x / 2**0.5 for x in (0.9, 0.7, 0.2, 0.9, 0.6, 0.7, 0.9, 0.1, 0.6, 0.5))
gen = nr.GeneralChannel(nr.GeneralParams.from_vector(vec))
t0 = time.perf_counter(); nr.solve(ch); t_ad = time.perf_counter() - t0
t0 = time.perf_counter(); nr.solve(gen); t_gen = time.perf_counter() - t0
print(f"{nr.backend_name()} ad={t_ad:.3f}s general={t_gen:.3f}s")
"""


def bench_scans():
    for force in ("0", "1"):
        env = dict(os.environ, NUCRANGE_FORCE_PURE=force)
        out = subprocess.run(
            [sys.executable, "-c", SCAN_SNIPPET], env=env, capture_output=True, text=True
        )
        print("scan:", out.stdout.strip() or out.stderr.strip())


if __name__ == "__main__":
    print("kernel micro-benchmarks (best of 5):")
    bench_kernels()
    print("\nfull solver scans (grid 1000):")
    bench_scans()
