"""Backend selection for the hot curve kernels.

Prefers the compiled Cython extension when it imported cleanly; falls back
to the numpy implementation otherwise. ``NUCRANGE_FORCE_PURE=1`` forces the
fallback (used by the benchmark and the backend-equivalence tests).
"""

import os

from . import pure as _pure

if os.environ.get("NUCRANGE_FORCE_PURE") == "1":
    _impl = _pure
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND
curve_xy = _impl.curve_xy
conic_residual = _impl.conic_residual
residual_on_curve = _impl.residual_on_curve
bisect_on_curve = _impl.bisect_on_curve


def backend_name() -> str:
    """Name of the kernel backend in use ("cython" or "pure")."""
    return BACKEND
