import math

import numpy as np
import pytest

from nucrange._kernels import BACKEND, pure

try:
    from nucrange._kernels import _fast
except ImportError:
    _fast = None

CURVE = (0.3, -0.2, 0.8, 1.1, 0.4, -0.3, 0.9)
CONIC = (0.1, 0.05, 1.25, 1.3, 0.9, -0.2)


def test_backend_reports_name():
    assert BACKEND in ("pure", "cython")


def test_pure_curve_matches_direct_evaluation():
    phis = np.linspace(0, 2 * math.pi, 37)
    x, y = pure.curve_xy(*CURVE, phis)
    cx, cy, p, q1, q2, r1, r2 = CURVE
    np.testing.assert_allclose(x, cx + p * (q1 * np.cos(phis) + r1 * np.sin(phis)))
    np.testing.assert_allclose(y, cy + p * (q2 * np.cos(phis) + r2 * np.sin(phis)))


@pytest.mark.skipif(_fast is None, reason="compiled backend unavailable")
def test_backends_agree(rng):
    for _ in range(20):
        curve = tuple(rng.uniform(-2, 2, 7))
        conic = tuple(rng.uniform(-1, 1, 2)) + (rng.uniform(0.5, 2),) + tuple(
            rng.uniform(0.2, 2, 3)
        )
        phis = rng.uniform(0, 2 * math.pi, 101)
        np.testing.assert_allclose(
            pure.residual_on_curve(curve, conic, phis),
            _fast.residual_on_curve(curve, conic, phis),
            rtol=1e-13,
            atol=1e-13,
        )
        xp, yp = pure.curve_xy(*curve, phis)
        xf, yf = _fast.curve_xy(*curve, phis)
        np.testing.assert_allclose(xp, xf, atol=1e-14)
        np.testing.assert_allclose(yp, yf, atol=1e-14)


@pytest.mark.skipif(_fast is None, reason="compiled backend unavailable")
def test_bisection_agrees_between_backends():
    phis = np.linspace(0, 2 * math.pi, 257)
    g = pure.residual_on_curve(CURVE, CONIC, phis)
    brackets = [
        (phis[i], phis[i + 1], g[i])
        for i in range(256)
        if (g[i] < 0) != (g[i + 1] < 0)
    ]
    assert brackets
    for lo, hi, glo in brackets:
        root_p = pure.bisect_on_curve(CURVE, CONIC, lo, hi, glo, 1e-13, 200)
        root_f = _fast.bisect_on_curve(CURVE, CONIC, lo, hi, glo, 1e-13, 200)
        assert root_p == pytest.approx(root_f, abs=1e-12)
        resid = pure.residual_on_curve(CURVE, CONIC, np.array([root_p]))[0]
        assert abs(resid) < 1e-10


def test_forced_pure_selection(monkeypatch):
    import importlib
    import subprocess
    import sys

    code = (
        "import nucrange._kernels as k; print(k.backend_name())"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"NUCRANGE_FORCE_PURE": "1", "PATH": "/usr/bin:/bin"},
    )
    assert out.stdout.strip() == "pure"
