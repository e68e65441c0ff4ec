"""Pure numpy implementation of the hot curve-evaluation kernels.

The compiled backend in ``_fast.pyx`` implements the same four functions
with identical signatures; ``nucrange._kernels`` picks one at import time.
All coordinates are the centered parametric form of a nuclear-range curve,

    x(phi) = cx + p * (q1*cos(phi) + r1*sin(phi))
    y(phi) = cy + p * (q2*cos(phi) + r2*sin(phi))

and an implicit conic is evaluated in its own centered, scale-divided
coordinates as  g = A*u^2 + B*v^2 + C*u*v - 1.
"""

import numpy as np

BACKEND = "pure"


def curve_xy(cx, cy, p, q1, q2, r1, r2, phis):
    """Evaluate curve coordinates on an array of angles."""
    c = np.cos(phis)
    s = np.sin(phis)
    x = cx + p * (q1 * c + r1 * s)
    y = cy + p * (q2 * c + r2 * s)
    return x, y


def conic_residual(x, y, cx, cy, inv_scale, ca, cb, cc):
    """Implicit-conic residual g(x, y) for arrays of plane points."""
    u = (np.asarray(x) - cx) * inv_scale
    v = (np.asarray(y) - cy) * inv_scale
    return ca * u * u + cb * v * v + cc * u * v - 1.0


def residual_on_curve(curve, conic, phis):
    """Fused evaluation: conic residual along a parametric curve.

    ``curve`` is (cx, cy, p, q1, q2, r1, r2); ``conic`` is
    (cx, cy, inv_scale, A, B, C).
    """
    x, y = curve_xy(*curve, phis)
    return conic_residual(x, y, *conic)


def bisect_on_curve(curve, conic, lo, hi, flo, tol, max_iter):
    """Bisect a sign change of the conic residual along the curve.

    Requires ``sign(g(lo)) != sign(g(hi))`` with ``flo = g(lo)``; returns
    the bracket midpoint once its width drops below ``tol``.
    """
    neg = flo < 0.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo < tol:
            return mid
        fm = residual_on_curve(curve, conic, np.array([mid]))[0]
        if (fm < 0.0) == neg:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
