"""Code synthesis: scan the admissible interval, intersect the two curves,
recover generating states, and assemble block-diagonal rank-2 projectors.

The intersection strategy follows the parametric-on-implicit scheme: points
of one curve are swept through the implicit conic of the other, sign changes
are bisected to ``intersect_tol``, and degenerate kind pairs (point/segment
collapses) fall back to exact geometric distance tests.

Two curves that merely touch (the amplitude-damping model: a point against
a shrinking circle) intersect only at isolated constraint values that a
finite grid almost never hits, so the scan additionally tracks a signed
separation between grid cells and bisects its sign changes in lambda; the
resulting points carry the refined lambda, which is how a grid of 1000
reproduces the closed-form solution to full precision.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .channels import BlockOperators, Channel, derive_blocks
from .errors import (
    DomainError,
    EmptyOmegaError,
    InvalidKindError,
    NotAProjectorError,
    OffCurveError,
    StructureError,
)
from .linalg import RealSym2, SymEig2, build_state, check_finite, symmetric_eig2
from .ranges import (
    ON_CURVE_TOL,
    ConicImplicit,
    CurveKind,
    NuclearCurve,
    angles_from_point,
    conic_implicit,
    curve_point,
    curve_points,
    numerical_range_boundary,
    nuclear_curve,
    support_max,
)

log = logging.getLogger(__name__)

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SolverConfig:
    """Tunable knobs of the scan; defaults match the published procedure."""

    lambda_grid: int = 1000
    phi_samples: int = 512
    kl_tol: float = 1e-10
    intersect_tol: float = 1e-12
    dedup_radius: float = 1e-9
    #: Curves closer than this (but not touching) trigger lambda refinement.
    touch_window: float = 1e-3

    def __post_init__(self):
        if (
            self.lambda_grid < 1
            or self.phi_samples < 8
            or self.kl_tol <= 0
            or self.intersect_tol <= 0
            or self.dedup_radius <= 0
            or self.touch_window <= 0
        ):
            raise DomainError("solver configuration values must be positive")


@dataclass(frozen=True)
class OmegaInterval:
    """Overlap of the spectral intervals of the two 11-blocks."""

    lo: float
    hi: float
    empty: bool
    nu: tuple[float, float]
    mu: tuple[float, float]


@dataclass(frozen=True)
class GammaPoint:
    """One intersection point with its recovered curve angles."""

    z: complex
    lambda11: float
    phi_e: float
    phi_f: float
    theta_e: float
    theta_f: float


@dataclass(frozen=True)
class CodeSolution:
    """A verified code projector with its compression values.

    ``lam`` is the 2x2 grid of compression values; ``residuals`` are the
    four Frobenius defects of the compression conditions, ordered
    (11, 12, 21, 22).
    """

    lam: np.ndarray
    psi_e: np.ndarray
    psi_f: np.ndarray
    p2: np.ndarray
    residuals: np.ndarray

    @property
    def lambda11(self) -> float:
        return float(self.lam[0, 0].real)

    @property
    def lambda12(self) -> complex:
        return complex(self.lam[0, 1])

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max())


@dataclass(frozen=True)
class _Side:
    """One 2x2 subproblem, rotated so its 11-block is real symmetric.

    ``phase`` is the second diagonal entry of the phase gauge ``D``; states
    of the reduced problem map back as ``psi = D @ psi_red``.
    """

    sym: RealSym2
    a_red: np.ndarray
    phase: complex
    eig: SymEig2 = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "eig", symmetric_eig2(self.sym))

    def curve(self, lam: float) -> NuclearCurve:
        return nuclear_curve(self.a_red, self.sym, lam)

    def state(self, theta: float, phi: float) -> np.ndarray:
        psi = build_state(self.eig.rotation_angle, theta, phi)
        psi[1] *= self.phase
        return psi


def _reduce_side(h11: np.ndarray, a12: np.ndarray) -> _Side:
    """Diagonal phase gauge making a Hermitian 11-block real symmetric."""
    off = complex(h11[0, 1])
    if abs(off.imag) <= 1e-14 * max(1.0, abs(off)):
        phase = 1.0 + 0j
        b = off.real
        a_red = np.array(a12, dtype=complex)
    else:
        phase = off.conjugate() / abs(off)
        b = abs(off)
        d = np.array([1.0, phase], dtype=complex)
        a_red = np.outer(d.conj(), d) * np.asarray(a12, dtype=complex)
    sym = RealSym2(a=float(h11[0, 0].real) / 2.0, b=float(b), c=float(h11[1, 1].real) / 2.0)
    return _Side(sym=sym, a_red=a_red, phase=phase)


def _sides(blocks: BlockOperators) -> tuple[_Side, _Side]:
    return _reduce_side(blocks.e11, blocks.e12), _reduce_side(blocks.f11, blocks.f12)


def omega(blocks: BlockOperators) -> OmegaInterval:
    """Admissible interval for the first compression value."""
    side_e, side_f = _sides(blocks)
    nu = side_e.eig.eigenvalues()
    mu = side_f.eig.eigenvalues()
    lo, hi = max(nu[0], mu[0]), min(nu[1], mu[1])
    return OmegaInterval(lo=lo, hi=hi, empty=lo > hi, nu=nu, mu=mu)


# ---------------------------------------------------------------------------
# geometric helpers


def _golden_min(f, lo: float, hi: float, iters: int = 80):
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _segment_geometry(c: NuclearCurve) -> tuple[complex, float]:
    """Unit direction and half-length of a segment curve around its center."""
    q1, q2 = c.q.real, c.q.imag
    r1, r2 = c.r.real, c.r.imag
    if abs(c.q) >= abs(c.r):
        dx, dy = q1, q2
    else:
        dx, dy = r1, r2
    norm = math.hypot(dx, dy)
    dx, dy = dx / norm, dy / norm
    amp = math.hypot(q1 * dx + q2 * dy, r1 * dx + r2 * dy)
    return complex(dx, dy), c.p_of_lambda * amp


def _circle_radius(c: NuclearCurve) -> float:
    return c.p_of_lambda * abs(c.q)


def _dist_point_to_curve(z: complex, c: NuclearCurve) -> float:
    """Euclidean distance from a plane point to a curve of any kind."""
    if c.kind is CurveKind.POINT:
        return abs(z - c.center)
    if c.kind is CurveKind.CIRCLE:
        return abs(abs(z - c.center) - _circle_radius(c))
    if c.kind is CurveKind.SEGMENT:
        d, half = _segment_geometry(c)
        rel = z - c.center
        t = rel.real * d.real + rel.imag * d.imag
        t = min(half, max(-half, t))
        return abs(rel - t * d)
    grid = 2.0 * math.pi * np.arange(64) / 64
    pts = curve_points(c, grid)
    k = int(np.argmin(np.abs(pts - z)))
    span = grid[1] - grid[0]
    _, best = _golden_min(lambda ph: abs(curve_point(c, ph) - z), grid[k] - span, grid[k] + span, 60)
    return best


def _curve_tangent(c: NuclearCurve, phi: float) -> complex:
    return c.p_of_lambda * (-c.q * math.sin(phi) + c.r * math.cos(phi))


def _pair_refine(c_e: NuclearCurve, c_f: NuclearCurve, phi_e: float, phi_f: float):
    """Levenberg-damped Gauss-Newton on ``|z_e(phi_e) - z_f(phi_f)|``.

    Converges quadratically at transversal crossings and degrades
    gracefully (damping) at tangencies where the Jacobian is singular.
    """
    diff = curve_point(c_e, phi_e) - curve_point(c_f, phi_f)
    f = abs(diff) ** 2
    mu = 1e-8
    for _ in range(80):
        if f <= 1e-28:
            break
        te = _curve_tangent(c_e, phi_e)
        tf = _curve_tangent(c_f, phi_f)
        j = np.array([[te.real, -tf.real], [te.imag, -tf.imag]])
        rhs = -j.T @ np.array([diff.real, diff.imag])
        jtj = j.T @ j
        improved = False
        for _ in range(12):
            try:
                delta = np.linalg.solve(jtj + mu * np.eye(2), rhs)
            except np.linalg.LinAlgError:
                mu *= 10.0
                continue
            pe, pf = phi_e + delta[0], phi_f + delta[1]
            d_try = curve_point(c_e, pe) - curve_point(c_f, pf)
            f_try = abs(d_try) ** 2
            if f_try < f:
                phi_e, phi_f, diff, f = pe, pf, d_try, f_try
                mu = max(mu * 0.3, 1e-12)
                improved = True
                break
            mu *= 8.0
        if not improved:
            break
    return phi_e, phi_f, math.sqrt(f)


def _pair_min_distance(c_e: NuclearCurve, c_f: NuclearCurve) -> tuple[float, complex]:
    """Minimum curve-to-curve distance and the E-side point achieving it."""
    if c_e.kind is CurveKind.POINT:
        return _dist_point_to_curve(c_e.center, c_f), c_e.center
    if c_f.kind is CurveKind.POINT:
        if c_e.kind is CurveKind.CIRCLE:
            rel = c_f.center - c_e.center
            radius = _circle_radius(c_e)
            if abs(rel) <= 1e-15:
                return radius, c_e.center + radius
            z = c_e.center + rel / abs(rel) * radius
            return abs(z - c_f.center), z
        if c_e.kind is CurveKind.SEGMENT:
            d, half = _segment_geometry(c_e)
            rel = c_f.center - c_e.center
            t = min(half, max(-half, rel.real * d.real + rel.imag * d.imag))
            z = c_e.center + t * d
            return abs(z - c_f.center), z
        grid = 2.0 * math.pi * np.arange(64) / 64
        pts = curve_points(c_e, grid)
        k = int(np.argmin(np.abs(pts - c_f.center)))
        span = grid[1] - grid[0]
        phi, best = _golden_min(
            lambda ph: abs(curve_point(c_e, ph) - c_f.center),
            grid[k] - span,
            grid[k] + span,
            60,
        )
        return best, curve_point(c_e, phi)
    grid_e = 2.0 * math.pi * np.arange(96) / 96
    grid_f = 2.0 * math.pi * np.arange(96) / 96
    pts_e = curve_points(c_e, grid_e)
    pts_f = curve_points(c_f, grid_f)
    dmat = np.abs(pts_e[:, None] - pts_f[None, :])
    i, j = np.unravel_index(int(np.argmin(dmat)), dmat.shape)
    phi_e, _, best = _pair_refine(c_e, c_f, float(grid_e[i]), float(grid_f[j]))
    return best, curve_point(c_e, phi_e)


def _coarse_pair_distance(c_e: NuclearCurve, c_f: NuclearCurve) -> float:
    """Cheap upper bound on the pair distance, used to gate refinement."""
    n_e = 1 if c_e.kind is CurveKind.POINT else 48
    n_f = 1 if c_f.kind is CurveKind.POINT else 64
    pts_e = (
        np.array([c_e.center])
        if n_e == 1
        else curve_points(c_e, 2.0 * math.pi * np.arange(n_e) / n_e)
    )
    pts_f = (
        np.array([c_f.center])
        if n_f == 1
        else curve_points(c_f, 2.0 * math.pi * np.arange(n_f) / n_f)
    )
    return float(np.abs(pts_e[:, None] - pts_f[None, :]).min())


def _curve_extent(c: NuclearCurve) -> float:
    return c.p_of_lambda * (abs(c.q) + abs(c.r))


def _conic_roots_along(c_param: NuclearCurve, conic: ConicImplicit, cfg: SolverConfig):
    """Angles where a parametric curve crosses an implicit conic."""
    n = cfg.phi_samples
    phis = 2.0 * math.pi * np.arange(n + 1) / n
    gvals = _kernels.residual_on_curve(c_param.param_tuple(), conic.param_tuple(), phis)
    roots = []
    for i in range(n):
        g0, g1 = gvals[i], gvals[i + 1]
        if g0 == 0.0:
            roots.append(phis[i])
        elif (g0 < 0.0) != (g1 < 0.0):
            roots.append(
                _kernels.bisect_on_curve(
                    c_param.param_tuple(),
                    conic.param_tuple(),
                    phis[i],
                    phis[i + 1],
                    g0,
                    cfg.intersect_tol,
                    200,
                )
            )
    return roots


def _segment_conic_roots(seg: NuclearCurve, conic_curve: NuclearCurve):
    """Exact segment/conic crossings via the quadratic in the line parameter."""
    con = conic_implicit(conic_curve)
    d, half = _segment_geometry(seg)
    inv = 1.0 / con.scale
    u0 = (seg.center.real - con.center.real) * inv
    v0 = (seg.center.imag - con.center.imag) * inv
    du, dv = d.real * inv, d.imag * inv
    a2 = con.alpha * du * du + con.beta * dv * dv + con.gamma * du * dv
    a1 = 2.0 * con.alpha * u0 * du + 2.0 * con.beta * v0 * dv + con.gamma * (u0 * dv + v0 * du)
    a0 = con.alpha * u0 * u0 + con.beta * v0 * v0 + con.gamma * u0 * v0 - 1.0
    if abs(a2) < 1e-300:
        ts = [] if abs(a1) < 1e-300 else [-a0 / a1]
    else:
        disc = a1 * a1 - 4.0 * a2 * a0
        if disc < 0.0:
            return []
        sq = math.sqrt(disc)
        ts = [(-a1 - sq) / (2.0 * a2), (-a1 + sq) / (2.0 * a2)]
    return [seg.center + t * d for t in ts if -half <= t <= half]


def _segment_segment_points(c_e: NuclearCurve, c_f: NuclearCurve, tol: float):
    de, he = _segment_geometry(c_e)
    df, hf = _segment_geometry(c_f)
    cross = de.real * df.imag - de.imag * df.real
    rel = c_f.center - c_e.center
    if abs(cross) <= 1e-12:
        # parallel: accept overlap endpoints when the lines coincide
        offset = abs(rel.real * de.imag - rel.imag * de.real)
        if offset > tol:
            return []
        base = rel.real * de.real + rel.imag * de.imag
        lo = max(-he, base - hf)
        hi = min(he, base + hf)
        if lo > hi:
            return []
        return [c_e.center + lo * de, c_e.center + hi * de]
    t_e = (rel.real * df.imag - rel.imag * df.real) / cross
    t_f = (rel.real * de.imag - rel.imag * de.real) / cross
    if abs(t_e) <= he and abs(t_f) <= hf:
        return [c_e.center + t_e * de]
    return []


def _transversal_points(c_e: NuclearCurve, c_f: NuclearCurve, cfg: SolverConfig):
    """All genuine crossings of the two curves at their common lambda."""
    conic_kinds = (CurveKind.ELLIPSE, CurveKind.CIRCLE)
    if c_e.kind is CurveKind.POINT or c_f.kind is CurveKind.POINT:
        return []
    if c_e.kind is CurveKind.SEGMENT and c_f.kind is CurveKind.SEGMENT:
        return _segment_segment_points(c_e, c_f, ON_CURVE_TOL)
    if c_e.kind is CurveKind.SEGMENT and c_f.kind in conic_kinds:
        return _segment_conic_roots(c_e, c_f)
    if c_f.kind is CurveKind.SEGMENT and c_e.kind in conic_kinds:
        return _segment_conic_roots(c_f, c_e)
    con_f = conic_implicit(c_f)
    return [curve_point(c_e, ph) for ph in _conic_roots_along(c_e, con_f, cfg)]


# ---------------------------------------------------------------------------
# full-range (unconstrained) sides


def _is_scalar_matrix(a: np.ndarray) -> bool:
    mu = 0.5 * np.trace(a)
    return float(np.linalg.norm(a - mu * np.eye(2))) <= 1e-12


def _range_violation(a: np.ndarray, z: complex, n_dirs: int = 64) -> float:
    """Positive when ``z`` lies outside the numerical range of ``a``."""
    thetas = 2.0 * math.pi * np.arange(n_dirs) / n_dirs
    return float(
        max((math.cos(th) * z.real + math.sin(th) * z.imag) - support_max(a, th) for th in thetas)
    )


def _full_range_candidates(c_e, c_f, side_e, side_f, lam, cfg):
    """Representative targets when one or both constraints are vacuous.

    With an unconstrained side every point of the other curve inside the
    unconstrained block's numerical range is admissible; deterministic
    representatives are returned (curve/region boundary crossings, or the
    phi = 0 point when one set is wholly contained).
    """
    slack = 1e-9
    if c_e.kind is CurveKind.FULL_RANGE and c_f.kind is CurveKind.FULL_RANGE:
        a_e, a_f = side_e.a_red, side_f.a_red
        if _is_scalar_matrix(a_e) and _is_scalar_matrix(a_f):
            mu_e = complex(0.5 * np.trace(a_e))
            mu_f = complex(0.5 * np.trace(a_f))
            if abs(mu_e - mu_f) <= ON_CURVE_TOL:
                return [(lam, mu_e)]
            return []
        boundary = numerical_range_boundary(a_e, 128)
        viols = np.array([_range_violation(a_f, complex(z)) for z in boundary.values])
        out = []
        for i in range(len(viols)):
            j = (i + 1) % len(viols)
            if (viols[i] <= slack) != (viols[j] <= slack):
                w = abs(viols[i]) / max(abs(viols[i]) + abs(viols[j]), 1e-300)
                out.append((lam, complex((1 - w) * boundary.values[i] + w * boundary.values[j])))
        if not out and float(viols.max()) <= slack:
            out = [(lam, complex(boundary.values[0]))]
        return out[:4]
    if c_f.kind is CurveKind.FULL_RANGE:
        free_a, curve = side_f.a_red, c_e
    else:
        free_a, curve = side_e.a_red, c_f
    if curve.kind is CurveKind.POINT:
        if _range_violation(free_a, curve.center) <= slack:
            return [(lam, curve.center)]
        return []
    n = max(64, cfg.phi_samples // 8)
    phis = 2.0 * math.pi * np.arange(n + 1) / n
    pts = curve_points(curve, phis)
    viols = np.array([_range_violation(free_a, complex(z)) for z in pts])
    out = []
    for i in range(n):
        if (viols[i] <= slack) != (viols[i + 1] <= slack):
            phi, _ = _golden_min(
                lambda ph: abs(_range_violation(free_a, curve_point(curve, ph))),
                phis[i],
                phis[i + 1],
                60,
            )
            out.append((lam, curve_point(curve, phi)))
    if not out and float(viols.max()) <= slack:
        out = [(lam, curve_point(curve, 0.0))]
    return out


# ---------------------------------------------------------------------------
# intersection of the two curves at (or near) one lambda


def _admissible_window(side_e: _Side, side_f: _Side) -> tuple[float, float]:
    lo = max(side_e.eig.half_trace - side_e.eig.epsilon, side_f.eig.half_trace - side_f.eig.epsilon)
    hi = min(side_e.eig.half_trace + side_e.eig.epsilon, side_f.eig.half_trace + side_f.eig.epsilon)
    return lo, hi


def _gamma_candidates(side_e, side_f, lam, cfg, allow_refine=True):
    """Intersection candidates ``(lambda_used, z)`` at one grid value."""
    c_e, c_f = side_e.curve(lam), side_f.curve(lam)
    if c_e.kind is CurveKind.EMPTY or c_f.kind is CurveKind.EMPTY:
        return []
    if c_e.kind is CurveKind.FULL_RANGE or c_f.kind is CurveKind.FULL_RANGE:
        return _full_range_candidates(c_e, c_f, side_e, side_f, lam, cfg)
    pts = [(lam, z) for z in _transversal_points(c_e, c_f, cfg)]
    if pts:
        return pts
    # No crossing: check for a touch, first with a cheap bound.
    gate = cfg.touch_window + 0.2 * (_curve_extent(c_e) + _curve_extent(c_f))
    if _coarse_pair_distance(c_e, c_f) > gate:
        return []
    dist, z = _pair_min_distance(c_e, c_f)
    if dist <= ON_CURVE_TOL:
        return [(lam, z)]
    if not (allow_refine and dist <= cfg.touch_window):
        return []
    lo, hi = _admissible_window(side_e, side_f)
    span = 10.0 * cfg.touch_window
    a, b = max(lo, lam - span), min(hi, lam + span)
    if a >= b:
        return []

    def pair_dist(lv: float) -> float:
        ce, cf = side_e.curve(lv), side_f.curve(lv)
        if ce.kind is CurveKind.EMPTY or cf.kind is CurveKind.EMPTY:
            return math.inf
        if ce.kind is CurveKind.FULL_RANGE or cf.kind is CurveKind.FULL_RANGE:
            return math.inf
        return _pair_min_distance(ce, cf)[0]

    lam_star, dist_star = _golden_min(pair_dist, a, b, 100)
    if dist_star <= ON_CURVE_TOL:
        _, z_star = _pair_min_distance(side_e.curve(lam_star), side_f.curve(lam_star))
        return [(lam_star, z_star)]
    return []


def _signed_separation(c_e: NuclearCurve, c_f: NuclearCurve):
    """Signed gap for point-versus-curve pairs; None when no sign exists."""
    conic_kinds = (CurveKind.ELLIPSE, CurveKind.CIRCLE)
    for pt, other in ((c_e, c_f), (c_f, c_e)):
        if pt.kind is not CurveKind.POINT:
            continue
        if other.kind in conic_kinds:
            con = conic_implicit(other)
            g = _kernels.conic_residual(
                np.array([pt.center.real]), np.array([pt.center.imag]), *con.param_tuple()
            )
            return float(g[0])
        if other.kind is CurveKind.SEGMENT:
            d, _ = _segment_geometry(other)
            rel = pt.center - other.center
            return rel.real * d.imag - rel.imag * d.real
    return None


def _recover_point(side_e, side_f, lam, z, cfg):
    """Angles, states and the verified solution for one candidate."""
    c_e, c_f = side_e.curve(lam), side_f.curve(lam)
    angles = []
    for side, curve in ((side_e, c_e), (side_f, c_f)):
        if curve.kind is CurveKind.FULL_RANGE:
            t, u = _generating_angles(side.a_red, z)
            angles.append((t, u))
        else:
            angles.append(angles_from_point(curve, z))
    (theta_e, phi_e), (theta_f, phi_f) = angles
    return GammaPoint(
        z=z, lambda11=lam, phi_e=phi_e, phi_f=phi_f, theta_e=theta_e, theta_f=theta_f
    )


def gamma(blocks: BlockOperators, lambda11: float, cfg: SolverConfig | None = None):
    """Intersection of the two constrained-range curves at one value.

    Near-touching degenerate pairs are refined in lambda before acceptance,
    so the returned points may carry a slightly adjusted ``lambda11``; each
    point then lies on both curves to within ``ON_CURVE_TOL``.
    """
    cfg = cfg or SolverConfig()
    side_e, side_f = _sides(blocks)
    out = []
    for lam, z in _gamma_candidates(side_e, side_f, lambda11, cfg):
        try:
            out.append(_recover_point(side_e, side_f, lam, z, cfg))
        except (OffCurveError, InvalidKindError) as exc:
            log.debug("dropping gamma candidate %s: %s", z, exc)
    return _dedup_gamma(out, cfg.dedup_radius)


def _dedup_gamma(points, radius):
    kept: list[GammaPoint] = []
    for p in sorted(points, key=lambda g: (g.lambda11, g.z.real, g.z.imag)):
        if any(
            abs(p.lambda11 - k.lambda11) <= radius and abs(p.z - k.z) <= radius for k in kept
        ):
            continue
        kept.append(p)
    return kept


# ---------------------------------------------------------------------------
# generating states for unconstrained sides


def _generating_angles(a: np.ndarray, target: complex, tol: float = 1e-9):
    """Bloch angles of a unit state with ``<psi|a|psi> = target``."""
    v0 = complex(0.5 * (a[0, 0] + a[1, 1]))
    vx = complex(0.5 * (a[0, 1] + a[1, 0]))
    vy = complex(0.5j * (a[0, 1] - a[1, 0]))
    vz = complex(0.5 * (a[0, 0] - a[1, 1]))

    def value(t, u):
        st = math.sin(t)
        return v0 + st * math.cos(u) * vx + st * math.sin(u) * vy + math.cos(t) * vz

    best = None
    for t0 in (0.25 * math.pi, 0.5 * math.pi, 0.75 * math.pi):
        for u0 in (0.0, 2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0):
            t, u = t0, u0
            step = 0.25 / max(abs(vx), abs(vy), abs(vz), 1e-30) ** 2
            f = abs(value(t, u) - target) ** 2
            for _ in range(200):
                st, ct = math.sin(t), math.cos(t)
                cu, su = math.cos(u), math.sin(u)
                m = value(t, u) - target
                dt = ct * cu * vx + ct * su * vy - st * vz
                du = -st * su * vx + st * cu * vy
                gt = 2.0 * (m.conjugate() * dt).real
                gu = 2.0 * (m.conjugate() * du).real
                t_try, u_try = t - step * gt, u - step * gu
                f_try = abs(value(t_try, u_try) - target) ** 2
                if f_try < f:
                    t, u, f = t_try, u_try, f_try
                    step *= 1.3
                else:
                    step *= 0.5
                if f <= 1e-30:
                    break
            if best is None or f < best[2]:
                best = (t, u, f)
    t, u, f = best
    if math.sqrt(f) > tol:
        raise OffCurveError(f"no generating state reaches {target}")
    t = t % (2.0 * math.pi)
    if t > math.pi:
        t, u = 2.0 * math.pi - t, u + math.pi
    return t, u % (2.0 * math.pi)


# ---------------------------------------------------------------------------
# verification and assembly


def verify_kl(p2: np.ndarray, blocks: BlockOperators, proj_tol: float = 1e-8):
    """Compression values and residuals of all four block operators.

    ``lam[i, j] = tr(P T_ij P) / 2`` and the residual is the Frobenius norm
    of ``P T_ij P - lam[i, j] P``; nothing is assumed about T21 or T22.
    """
    p2 = check_finite(p2, "projector")
    if p2.shape != (4, 4):
        raise NotAProjectorError("projector must be 4x4")
    if float(np.linalg.norm(p2 - p2.conj().T)) > proj_tol:
        raise NotAProjectorError("matrix is not Hermitian")
    if float(np.linalg.norm(p2 @ p2 - p2)) > proj_tol:
        raise NotAProjectorError("matrix is not idempotent")
    if abs(complex(np.trace(p2)) - 2.0) > proj_tol:
        raise NotAProjectorError("projector rank is not 2")
    lam = np.empty((2, 2), dtype=complex)
    residuals = np.empty(4)
    ts = ((0, 0, blocks.t11), (0, 1, blocks.t12), (1, 0, blocks.t21), (1, 1, blocks.t22))
    for k, (i, j, t) in enumerate(ts):
        ptp = p2 @ t @ p2
        lam[i, j] = complex(np.trace(ptp)) / 2.0
        residuals[k] = float(np.linalg.norm(ptp - lam[i, j] * p2))
    return lam, residuals


def _assemble(side_e: _Side, side_f: _Side, gp: GammaPoint, blocks, cfg):
    psi_e = side_e.state(gp.theta_e, gp.phi_e)
    psi_f = side_f.state(gp.theta_f, gp.phi_f)
    p2 = np.zeros((4, 4), dtype=complex)
    p2[:2, :2] = np.outer(psi_e, psi_e.conj())
    p2[2:, 2:] = np.outer(psi_f, psi_f.conj())
    lam, residuals = verify_kl(p2, blocks)
    return CodeSolution(lam=lam, psi_e=psi_e, psi_f=psi_f, p2=p2, residuals=residuals)


def solve(channel: Channel, cfg: SolverConfig | None = None) -> list[CodeSolution]:
    """Scan the admissible interval and return all verified code solutions.

    The scan visits a uniform inclusive grid, bisects signed-separation
    sign changes between neighboring grid cells (catching isolated touch
    solutions), keeps only solutions whose four compression residuals meet
    ``kl_tol``, and returns them sorted by ``lambda11`` then ``lambda12``
    with near-duplicates merged.
    """
    cfg = cfg or SolverConfig()
    pair = channel.kraus_pair()
    blocks = derive_blocks(pair)
    side_e, side_f = _sides(blocks)
    om = omega(blocks)
    if om.empty:
        raise EmptyOmegaError(
            f"spectral intervals {om.nu} and {om.mu} do not overlap"
        )
    if om.hi - om.lo <= 1e-15:
        grid = np.array([om.lo])
    else:
        grid = np.linspace(om.lo, om.hi, cfg.lambda_grid)

    candidates: list[tuple[float, complex]] = []
    seps: list[float | None] = []
    for lam in grid:
        candidates.extend(_gamma_candidates(side_e, side_f, float(lam), cfg))
        c_e, c_f = side_e.curve(float(lam)), side_f.curve(float(lam))
        if CurveKind.EMPTY in (c_e.kind, c_f.kind) or CurveKind.FULL_RANGE in (
            c_e.kind,
            c_f.kind,
        ):
            seps.append(None)
        else:
            seps.append(_signed_separation(c_e, c_f))

    def sep_at(lv: float):
        return _signed_separation(side_e.curve(lv), side_f.curve(lv))

    for i in range(len(grid) - 1):
        s0, s1 = seps[i], seps[i + 1]
        if s0 is None or s1 is None or s0 == 0.0 or (s0 < 0.0) == (s1 < 0.0):
            continue
        lo, hi, f_lo = float(grid[i]), float(grid[i + 1]), s0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if hi - lo <= 1e-16 * max(1.0, abs(mid)):
                break
            fm = sep_at(mid)
            if fm is None:
                break
            if (fm < 0.0) == (f_lo < 0.0):
                lo, f_lo = mid, fm
            else:
                hi = mid
        lam_star = 0.5 * (lo + hi)
        candidates.extend(
            _gamma_candidates(side_e, side_f, lam_star, cfg, allow_refine=True)
        )

    solutions = []
    rejected = 0
    for lam, z in candidates:
        try:
            gp = _recover_point(side_e, side_f, lam, z, cfg)
            sol = _assemble(side_e, side_f, gp, blocks, cfg)
        except (OffCurveError, InvalidKindError, NotAProjectorError) as exc:
            rejected += 1
            log.debug("candidate (%s, %s) rejected: %s", lam, z, exc)
            continue
        if sol.max_residual <= cfg.kl_tol:
            solutions.append(sol)
    if rejected:
        log.info("solve: %d candidates failed angle recovery or verification", rejected)

    solutions.sort(key=lambda s: (s.lambda11, s.lambda12.real, s.lambda12.imag))
    # Solutions are sorted by lambda11, so duplicates can only hide in the
    # tail of the kept list whose lambda11 is within the merge radius.
    merged: list[CodeSolution] = []
    keys: list[tuple[float, complex, float]] = []
    for sol in solutions:
        l11, l12, res = sol.lambda11, sol.lambda12, sol.max_residual
        dup = None
        for k in range(len(merged) - 1, -1, -1):
            k11, k12, _ = keys[k]
            if l11 - k11 > cfg.dedup_radius:
                break
            if abs(l12 - k12) <= cfg.dedup_radius:
                dup = k
                break
        if dup is None:
            merged.append(sol)
            keys.append((l11, l12, res))
        elif res < keys[dup][2]:
            merged[dup] = sol
            keys[dup] = (l11, l12, res)
    return merged


def ad_closed_form(params) -> CodeSolution:
    """Closed-form amplitude-damping solution.

    Requires strictly interior damping probabilities; the projector is built
    from the printed polar angles with both azimuthal angles set to zero
    (the first subproblem's angle is free and fixed to zero for
    determinism).
    """
    from .channels import ADParams, build_ad  # local import to avoid cycle noise

    if not isinstance(params, ADParams):
        params = ADParams(*params)
    p1, p2 = params.p1, params.p2
    if not (0.0 < p1 < 1.0 and 0.0 < p2 < 1.0):
        raise DomainError("closed form requires 0 < p1 < 1 and 0 < p2 < 1")
    den = 2.0 - p1 - p2 + p1 * p2
    lam11 = 1.0 - p2 * (1.0 - p1) / den
    cos_e = (p1 - p2 + p1 * p2) / den
    cos_f = (-p1 - p2 + p1 * p2) / den
    theta_e = math.acos(cos_e)
    theta_f = math.acos(cos_f)
    psi_e = build_state(0.0, theta_e, 0.0)
    psi_f = build_state(0.0, theta_f, 0.0)
    p2m = np.zeros((4, 4), dtype=complex)
    p2m[:2, :2] = np.outer(psi_e, psi_e.conj())
    p2m[2:, 2:] = np.outer(psi_f, psi_f.conj())
    blocks = derive_blocks(build_ad(params))
    lam, residuals = verify_kl(p2m, blocks)
    if abs(lam[0, 0].real - lam11) > 1e-9:
        raise StructureError("closed-form lambda11 does not match verification")
    return CodeSolution(lam=lam, psi_e=psi_e, psi_f=psi_f, p2=p2m, residuals=residuals)
