"""Numerical ranges of 2x2 matrices: standard, rank-k, and constrained.

The central object is the constrained ("nuclear") range of ``A`` over unit
states whose expectation of a real symmetric ``Z`` equals ``lambda``. For
``A = [[d, f], [g, h]]`` and ``Z = [[2a, b], [b, 2c]]`` that set is the
parametric curve

    z(phi) = z0 + w*lambda + p(lambda) * (q*cos(phi) + r*sin(phi)),

with coefficients derived by rotating into the eigenbasis of ``Z`` with the
proper rotation of :func:`nucrange.linalg.diagonalizer`:

    K  = b*(f+g) + (a-c)*(d-h)
    z0 = (d+h)/2 - (a+c)*K / (2*eps^2)
    w  = K / (2*eps^2)
    p  = sqrt(eps^2 - (lambda - (a+c))^2) / (2*eps^2)      (stored >= 0)
    q  = (a-c)*(f+g) - b*(d-h)
    r  = i*eps*(f-g)

Each curve point equals ``<psi|A|psi>`` for the explicitly built state
``psi = build_state(alpha, theta, phi)`` with ``cos(theta) = (lambda -
(a+c))/eps``; tests enforce this identity to 1e-10, which pins every sign
above. (Printed closed forms elsewhere carry a spurious ``sgn(a-c)`` that
only cancels when the angle branch is chosen per-case; the rotation branch
used here absorbs it.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import (
    DegenerateConicError,
    DomainError,
    InvalidKindError,
    NotHermitianError,
    OffCurveError,
)
from .linalg import RealSym2, SymEig2, check_finite, symmetric_eig2

#: Below this magnitude a curve radius or coefficient pair is degenerate.
DEGENERACY_TOL = 1e-12
#: Admissibility slack for the scalar-matrix (eps = 0) branch.
ADMIT_TOL = 1e-12
#: A point must reproduce to this distance for angle recovery to accept it.
ON_CURVE_TOL = 1e-8
#: |cos| overshoots up to this much are rounded back into [-1, 1].
CLAMP_TOL = 1e-9


class CurveKind(Enum):
    ELLIPSE = "ellipse"
    CIRCLE = "circle"
    SEGMENT = "segment"
    POINT = "point"
    EMPTY = "empty"
    FULL_RANGE = "full-range"


@dataclass(frozen=True)
class NuclearCurve:
    """One constrained-range curve at a fixed constraint value ``lam``."""

    z0: complex
    w: complex
    q: complex
    r: complex
    lam: float
    p_of_lambda: float
    center: complex
    eig: SymEig2
    kind: CurveKind

    def param_tuple(self) -> tuple[float, float, float, float, float, float, float]:
        """Kernel-ready ``(cx, cy, p, q1, q2, r1, r2)``."""
        return (
            self.center.real,
            self.center.imag,
            self.p_of_lambda,
            self.q.real,
            self.q.imag,
            self.r.real,
            self.r.imag,
        )


@dataclass(frozen=True)
class ConicImplicit:
    """Centered implicit form ``alpha x^2 + beta y^2 + gamma xy = 1``.

    Coordinates are recentered by ``center`` and divided by ``scale``
    before evaluation.
    """

    alpha: float
    beta: float
    gamma: float
    center: complex
    scale: float

    def param_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (
            self.center.real,
            self.center.imag,
            1.0 / self.scale,
            self.alpha,
            self.beta,
            self.gamma,
        )


@dataclass(frozen=True)
class RangeSamples:
    """Sampled range points plus the parameters that generated them.

    ``lam`` is ``None`` for standard-range samples (the CSV lambda column is
    left empty); for state-cloud samples ``phi``/``lam`` hold the Bloch
    angles of the generating state.
    """

    values: np.ndarray
    phi: np.ndarray
    lam: np.ndarray | None = None


def theta_for_lambda(eig: SymEig2, lam: float) -> float:
    """Polar angle with ``cos(theta) = (lam - half_trace)/epsilon``."""
    if eig.epsilon == 0.0:
        raise DomainError("theta undefined for a scalar constraint matrix")
    ct = (lam - eig.half_trace) / eig.epsilon
    if abs(ct) > 1.0 + CLAMP_TOL:
        raise OffCurveError(f"lambda {lam} outside the admissible interval")
    return math.acos(min(1.0, max(-1.0, ct)))


def nuclear_curve(a: np.ndarray, z: RealSym2, lam: float) -> NuclearCurve:
    """Constrained range of ``a`` over states with ``<Z> = lam``."""
    a = check_finite(a, "range matrix")
    if a.shape != (2, 2):
        raise DomainError("nuclear_curve expects a 2x2 matrix")
    eig = symmetric_eig2(z)
    d, f = complex(a[0, 0]), complex(a[0, 1])
    g, h = complex(a[1, 0]), complex(a[1, 1])

    def degenerate(kind: CurveKind) -> NuclearCurve:
        return NuclearCurve(0j, 0j, 0j, 0j, lam, 0.0, 0j, eig, kind)

    if eig.epsilon == 0.0:
        if abs(lam - eig.half_trace) <= ADMIT_TOL:
            return degenerate(CurveKind.FULL_RANGE)
        return degenerate(CurveKind.EMPTY)
    if lam < eig.half_trace - eig.epsilon or lam > eig.half_trace + eig.epsilon:
        return degenerate(CurveKind.EMPTY)

    eps = eig.epsilon
    m = z.a - z.c
    big_k = z.b * (f + g) + m * (d - h)
    z0 = 0.5 * (d + h) - eig.half_trace * big_k / (2.0 * eps * eps)
    w = big_k / (2.0 * eps * eps)
    radicand = eps * eps - (lam - eig.half_trace) ** 2
    p = math.sqrt(max(radicand, 0.0)) / (2.0 * eps * eps)
    q = m * (f + g) - z.b * (d - h)
    r = 1j * eps * (f - g)
    center = z0 + w * lam

    scale = max(abs(q), abs(r))
    if p <= DEGENERACY_TOL or scale <= DEGENERACY_TOL:
        kind = CurveKind.POINT
    else:
        det = q.imag * r.real - q.real * r.imag
        if abs(det) <= DEGENERACY_TOL:
            kind = CurveKind.SEGMENT
        else:
            ssq = abs(q) ** 2 + abs(r) ** 2
            round_diff = (q.real**2 + r.real**2) - (q.imag**2 + r.imag**2)
            cross = q.real * q.imag + r.real * r.imag
            if abs(round_diff) <= 1e-12 * ssq and abs(cross) <= 1e-12 * ssq:
                kind = CurveKind.CIRCLE
            else:
                kind = CurveKind.ELLIPSE
    return NuclearCurve(z0, w, q, r, lam, p, center, eig, kind)


def curve_point(c: NuclearCurve, phi: float) -> complex:
    """Evaluate ``z(phi)``; a point curve returns its center for any phi."""
    if c.kind in (CurveKind.EMPTY, CurveKind.FULL_RANGE):
        raise InvalidKindError(f"curve_point undefined for {c.kind.value} curve")
    if c.kind is CurveKind.POINT:
        return c.center
    return c.center + c.p_of_lambda * (c.q * math.cos(phi) + c.r * math.sin(phi))


def curve_points(c: NuclearCurve, phis: np.ndarray) -> np.ndarray:
    """Vectorized :func:`curve_point` over an angle array."""
    if c.kind in (CurveKind.EMPTY, CurveKind.FULL_RANGE):
        raise InvalidKindError(f"curve_points undefined for {c.kind.value} curve")
    phis = np.asarray(phis, dtype=float)
    if c.kind is CurveKind.POINT:
        return np.full(phis.shape, c.center, dtype=complex)
    x, y = _kernels.curve_xy(*c.param_tuple(), phis)
    return x + 1j * y


def curve_samples(c: NuclearCurve, n: int) -> RangeSamples:
    """``n`` equally spaced curve points with their angles recorded."""
    if n < 1:
        raise DomainError("need at least one sample")
    phis = 2.0 * math.pi * np.arange(n) / n
    vals = curve_points(c, phis)
    return RangeSamples(vals, phis, np.full(n, c.lam))


def conic_implicit(c: NuclearCurve) -> ConicImplicit:
    """Implicit ellipse equation for a non-degenerate curve.

    The discriminant satisfies ``gamma^2 - 4 alpha beta =
    -4 / (q2 r1 - q1 r2)^2`` identically, hence is negative.
    """
    if c.kind not in (CurveKind.ELLIPSE, CurveKind.CIRCLE):
        raise DegenerateConicError(
            f"implicit conic undefined for {c.kind.value} curve"
        )
    q1, q2 = c.q.real, c.q.imag
    r1, r2 = c.r.real, c.r.imag
    det = q2 * r1 - q1 * r2
    if abs(det) <= DEGENERACY_TOL:
        raise DegenerateConicError("conic coefficient determinant vanishes")
    d2 = det * det
    return ConicImplicit(
        alpha=(q2 * q2 + r2 * r2) / d2,
        beta=(q1 * q1 + r1 * r1) / d2,
        gamma=-2.0 * (q1 * q2 + r1 * r2) / d2,
        center=c.center,
        scale=c.p_of_lambda,
    )


def angles_from_point(c: NuclearCurve, ztilde: complex) -> tuple[float, float]:
    """Recover ``(theta, phi)`` generating a given curve point.

    ``theta`` comes from the constraint value alone; ``phi`` solves the two
    linear coordinate equations, with the sign fixed so the reconstructed
    point matches. Points farther than ``ON_CURVE_TOL`` from the curve are
    rejected.
    """
    if c.kind in (CurveKind.EMPTY, CurveKind.FULL_RANGE):
        raise InvalidKindError(f"angle recovery undefined for {c.kind.value} curve")
    theta = theta_for_lambda(c.eig, c.lam)

    if c.kind is CurveKind.POINT:
        if abs(ztilde - c.center) > ON_CURVE_TOL:
            raise OffCurveError("point is not on the collapsed curve")
        return theta, 0.0

    p = c.p_of_lambda
    x = (ztilde.real - c.center.real) / p
    y = (ztilde.imag - c.center.imag) / p
    q1, q2 = c.q.real, c.q.imag
    r1, r2 = c.r.real, c.r.imag

    if c.kind is CurveKind.SEGMENT:
        if abs(c.q) >= abs(c.r):
            dx, dy = q1, q2
        else:
            dx, dy = r1, r2
        norm = math.hypot(dx, dy)
        dx, dy = dx / norm, dy / norm
        t = x * dx + y * dy
        aa = q1 * dx + q2 * dy
        bb = r1 * dx + r2 * dy
        amp = math.hypot(aa, bb)
        ratio = t / amp
        if abs(ratio) > 1.0 + CLAMP_TOL:
            raise OffCurveError("point lies beyond the segment ends")
        ratio = min(1.0, max(-1.0, ratio))
        phi = (math.atan2(bb, aa) + math.acos(ratio)) % (2.0 * math.pi)
    else:
        det = q1 * r2 - q2 * r1
        cos_phi = (x * r2 - y * r1) / det
        sin_phi = (q1 * y - q2 * x) / det
        phi = math.atan2(sin_phi, cos_phi) % (2.0 * math.pi)

    if abs(curve_point(c, phi) - ztilde) > ON_CURVE_TOL:
        raise OffCurveError("no angle reproduces the requested point")
    return theta, phi


def hermitian_part(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    return 0.5 * (a + a.conj().T)


def support_max(a: np.ndarray, theta: float) -> float:
    """Largest eigenvalue of the Hermitian part of ``e^{-i theta} a``."""
    h = hermitian_part(np.exp(-1j * theta) * np.asarray(a, dtype=complex))
    return float(np.linalg.eigvalsh(h)[-1])


def numerical_range_boundary(a: np.ndarray, n: int = 256) -> RangeSamples:
    """Boundary points of the standard numerical range of a 2x2 matrix.

    For each direction ``theta_k = 2 pi k / n`` the returned point is
    ``<v|a|v>`` with ``v`` the top eigenvector of the Hermitian part of the
    rotated matrix; the convex hull of the points converges to the range.
    """
    a = check_finite(a, "range matrix")
    if a.shape != (2, 2):
        raise DomainError("numerical_range_boundary expects a 2x2 matrix")
    if n < 3:
        raise DomainError("need at least three directions")
    thetas = 2.0 * math.pi * np.arange(n) / n
    vals = np.empty(n, dtype=complex)
    for k, th in enumerate(thetas):
        h = hermitian_part(np.exp(-1j * th) * a)
        _, vecs = np.linalg.eigh(h)
        v = vecs[:, -1]
        vals[k] = v.conj() @ (a @ v)
    return RangeSamples(vals, thetas, None)


def hermitian_rank_k_interval(
    a: np.ndarray, k: int, tol: float = 1e-10
) -> tuple[float, float] | None:
    """Rank-k range of a Hermitian matrix: ``[lambda_{n-k+1}, lambda_k]``.

    Eigenvalues are ordered descending; ``None`` signals the empty interval
    that arises for ``k > n/2`` when the endpoints invert.
    """
    a = check_finite(a, "rank-k matrix")
    n = a.shape[0]
    if a.shape != (n, n):
        raise DomainError("matrix must be square")
    if not 1 <= k <= n:
        raise DomainError(f"rank k must be in [1, {n}]")
    if float(np.linalg.norm(a - a.conj().T)) > tol:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    desc = np.linalg.eigvalsh(a)[::-1]
    lo, hi = float(desc[n - k]), float(desc[k - 1])
    if lo > hi:
        return None
    return lo, hi
