"""Brute-force Monte Carlo validators for the closed-form curve machinery.

States are sampled uniformly on the Bloch sphere and pushed onto the
constraint set ``|<psi|Z|psi>| <= tol`` by projected gradient descent over
the sphere angles. Reported expectation values are always recomputed as
direct matrix sandwiches ``psi^dag M psi`` so the cloud route shares no
formulas with the parametric curves it cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EmptyCloudError
from .linalg import check_finite
from .ranges import (
    CurveKind,
    NuclearCurve,
    RangeSamples,
    curve_point,
    curve_points,
    nuclear_curve,
    support_max,
)

ALGORITHM = "numpy.random.PCG64"
DEFAULT_TOL = 1e-8
MAX_REFINE_ITERS = 200


@dataclass(frozen=True)
class StateCloud:
    """Constrained pure states with their constraint expectations.

    ``bloch`` holds the ``(t, u)`` sphere angles of each retained state;
    ``algorithm`` and ``seed`` make the cloud reproducible bit for bit.
    """

    states: np.ndarray
    bloch: np.ndarray
    exp_z: np.ndarray
    constraint_tol: float
    algorithm: str
    seed: int

    def __len__(self) -> int:
        return self.states.shape[0]


def _states_from_angles(t: np.ndarray, u: np.ndarray) -> np.ndarray:
    psi = np.empty((t.shape[0], 2), dtype=complex)
    psi[:, 0] = np.cos(0.5 * t)
    psi[:, 1] = np.exp(1j * u) * np.sin(0.5 * t)
    return psi


def _sandwich(m: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Direct ``psi^dag m psi`` for a batch of states."""
    return np.einsum("ni,ij,nj->n", psi.conj(), m, psi)


def sample_kernel_states(
    z: np.ndarray, n: int, tol: float = DEFAULT_TOL, seed: int = 0
) -> StateCloud:
    """Draw ``n`` Haar states and refine them toward ``<Z> = 0``.

    States still violating ``|<Z>| <= tol`` after refinement are dropped,
    so the cloud may hold fewer than ``n`` states — or none at all, e.g.
    for positive definite ``Z``. Identical seeds give identical clouds.
    """
    z = check_finite(z, "constraint matrix")
    if z.shape != (2, 2):
        raise DomainError("constraint matrix must be 2x2")
    if n < 1:
        raise DomainError("need at least one sample")
    rng = np.random.default_rng(seed)
    raw = rng.normal(size=(n, 4))
    psi = raw[:, 0] + 1j * raw[:, 1], raw[:, 2] + 1j * raw[:, 3]
    a0, a1 = psi
    norm = np.sqrt(np.abs(a0) ** 2 + np.abs(a1) ** 2)
    a0, a1 = a0 / norm, a1 / norm
    t = 2.0 * np.arctan2(np.abs(a1), np.abs(a0))
    u = np.where(
        (np.abs(a1) > 0) & (np.abs(a0) > 0),
        np.angle(a1 * np.conj(a0)) % (2.0 * math.pi),
        0.0,
    )

    # Bloch-affine form of <Z>: v0 + n(t, u) . v  with complex v.
    v0 = 0.5 * (z[0, 0] + z[1, 1])
    vx = 0.5 * (z[0, 1] + z[1, 0])
    vy = 0.5j * (z[0, 1] - z[1, 0])
    vz = 0.5 * (z[0, 0] - z[1, 1])
    vscale = max(abs(vx), abs(vy), abs(vz), abs(v0), 1e-30)

    def value(tv, uv):
        st, ct = np.sin(tv), np.cos(tv)
        return v0 + st * np.cos(uv) * vx + st * np.sin(uv) * vy + ct * vz

    def grads(tv, uv):
        st, ct = np.sin(tv), np.cos(tv)
        cu, su = np.cos(uv), np.sin(uv)
        m = v0 + st * cu * vx + st * su * vy + ct * vz
        dt = ct * cu * vx + ct * su * vy - st * vz
        du = -st * su * vx + st * cu * vy
        gt = 2.0 * (m.conj() * dt).real
        gu = 2.0 * (m.conj() * du).real
        return np.abs(m) ** 2, gt, gu

    step = np.full(n, 0.25 / vscale**2)
    f, gt, gu = grads(t, u)
    for _ in range(MAX_REFINE_ITERS):
        t_try = t - step * gt
        u_try = u - step * gu
        f_try = np.abs(value(t_try, u_try)) ** 2
        better = f_try < f
        t = np.where(better, t_try, t)
        u = np.where(better, u_try, u)
        step = np.where(better, step * 1.3, step * 0.5)
        f, gt, gu = grads(t, u)
        if float(f.max()) <= (tol * tol) * 1e-4:
            break

    # Canonicalize angles, rebuild states, and re-check the constraint with
    # a direct matrix product (the refinement used the Bloch form).
    t = np.mod(t, 2.0 * math.pi)
    flip = t > math.pi
    t = np.where(flip, 2.0 * math.pi - t, t)
    u = np.mod(np.where(flip, u + math.pi, u), 2.0 * math.pi)
    states = _states_from_angles(t, u)
    exp_z = _sandwich(z, states)
    keep = np.abs(exp_z) <= tol
    t, u, states, exp_z = t[keep], u[keep], states[keep], exp_z[keep]
    order = np.lexsort((u, t))
    return StateCloud(
        states=states[order],
        bloch=np.column_stack([t[order], u[order]]),
        exp_z=exp_z[order],
        constraint_tol=tol,
        algorithm=ALGORITHM,
        seed=seed,
    )


def cloud_range(a: np.ndarray, cloud: StateCloud) -> RangeSamples:
    """Expectation values of ``a`` over the cloud states.

    The recorded parameters are the Bloch angles ``(u, t)`` of each state
    (in the ``phi`` and ``lam`` slots), from which every value reproduces.
    """
    a = check_finite(a, "range matrix")
    if len(cloud) == 0:
        raise EmptyCloudError("state cloud is empty")
    vals = _sandwich(a, cloud.states)
    return RangeSamples(vals, phi=cloud.bloch[:, 1].copy(), lam=cloud.bloch[:, 0].copy())


def _min_distance_to_curve(value: complex, c: NuclearCurve, grid: np.ndarray) -> float:
    """Distance to the curve: dense-grid scan plus golden-section polish."""
    pts = curve_points(c, grid)
    d = np.abs(pts - value)
    k = int(np.argmin(d))
    if c.kind is CurveKind.POINT:
        return float(d[k])
    span = grid[1] - grid[0]
    lo, hi = grid[k] - span, grid[k] + span
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1 = abs(curve_point(c, x1) - value)
    f2 = abs(curve_point(c, x2) - value)
    for _ in range(60):
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = abs(curve_point(c, x1) - value)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = abs(curve_point(c, x2) - value)
    return float(min(f1, f2))


def cross_check_curve(
    a: np.ndarray,
    z,
    lam: float,
    cloud_size: int = 1000,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    grid_size: int = 4096,
) -> float:
    """Worst distance from cloud expectation values to the closed-form curve.

    Samples kernel states of ``Z - lam*I``; a full-range curve is instead
    validated by the support-function containment test, returning the worst
    (positive) violation, which is 0 for points inside the range.
    """
    a = check_finite(a, "range matrix")
    c = nuclear_curve(a, z, lam)
    if c.kind is CurveKind.EMPTY:
        raise DomainError("curve is empty at this lambda")
    shifted = z.matrix() - lam * np.eye(2)
    cloud = sample_kernel_states(shifted, cloud_size, tol=tol, seed=seed)
    if len(cloud) == 0:
        raise EmptyCloudError("no states met the constraint tolerance")
    vals = _sandwich(a, cloud.states)
    if c.kind is CurveKind.FULL_RANGE:
        worst = 0.0
        thetas = 2.0 * math.pi * np.arange(64) / 64
        sups = np.array([support_max(a, th) for th in thetas])
        for v in vals:
            viol = float(np.max((np.exp(-1j * thetas) * v).real - sups))
            worst = max(worst, viol)
        return worst
    grid = 2.0 * math.pi * np.arange(grid_size) / grid_size
    return max(_min_distance_to_curve(v, c, grid) for v in vals)
