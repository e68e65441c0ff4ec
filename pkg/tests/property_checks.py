"""Shared property-suite implementations.

Each check raises AssertionError on failure and returns a short summary
string on success; the regular test module and the acceptance suite both
call them with the full instance counts.
"""

import math

import numpy as np

from nucrange import (
    CurveKind,
    RealSym2,
    angles_from_point,
    build_state,
    conic_implicit,
    curve_point,
    curve_points,
    hermitian_rank_k_interval,
    nuclear_curve,
    numerical_range_boundary,
    support_max,
    symmetric_eig2,
)
from nucrange.ranges import theta_for_lambda


def _rand_matrix(rng, n=2):
    return rng.uniform(-2, 2, (n, n)) + 1j * rng.uniform(-2, 2, (n, n))


def _rand_sym(rng, min_eps=1e-6):
    while True:
        z = RealSym2(*rng.uniform(-2, 2, 3))
        if symmetric_eig2(z).epsilon >= min_eps:
            return z


def _rand_sym_admitting_zero(rng, min_eps=1e-3):
    """Random constraint matrix whose admissible interval contains 0."""
    a, b = rng.uniform(-2, 2, 2)
    eps_floor = math.hypot(b, 2 * a)  # epsilon for c = -a
    # choose c so that |a + c| <= 0.9 * epsilon(a, b, c); c = -a always works
    for _ in range(50):
        c = -a + rng.uniform(-1, 1)
        z = RealSym2(a, b, c)
        eig = symmetric_eig2(z)
        if eig.epsilon >= min_eps and abs(eig.half_trace) <= 0.9 * eig.epsilon:
            return z
    return RealSym2(a, b if eps_floor >= min_eps else b + 1.0, -a)


def _hausdorff(set_a: np.ndarray, set_b: np.ndarray) -> float:
    d = np.abs(set_a[:, None] - set_b[None, :])
    return max(float(d.min(axis=1).max()), float(d.min(axis=0).max()))


def check_master_identity(n=1000, seed=101, tol=1e-10):
    rng = np.random.default_rng(seed)
    worst_z = worst_a = 0.0
    for _ in range(n):
        a = _rand_matrix(rng)
        z = _rand_sym(rng)
        eig = symmetric_eig2(z)
        lam = eig.half_trace + rng.uniform(-1, 1) * eig.epsilon
        c = nuclear_curve(a, z, lam)
        phi = rng.uniform(0, 2 * math.pi)
        psi = build_state(eig.rotation_angle, theta_for_lambda(eig, lam), phi)
        worst_z = max(worst_z, abs(complex(psi.conj() @ z.matrix() @ psi) - lam))
        worst_a = max(worst_a, abs(complex(psi.conj() @ a @ psi) - curve_point(c, phi)))
    assert worst_z <= tol, f"constraint error {worst_z:.3e} > {tol}"
    assert worst_a <= tol, f"value error {worst_a:.3e} > {tol}"
    return f"worst constraint {worst_z:.2e}, worst value {worst_a:.2e} over {n}"


def check_containment(n=1000, seed=102, tol=1e-9, dirs=64, pts_per_curve=8):
    rng = np.random.default_rng(seed)
    thetas = 2 * math.pi * np.arange(dirs) / dirs
    worst = -math.inf
    for _ in range(n):
        a = _rand_matrix(rng)
        z = _rand_sym(rng)
        eig = symmetric_eig2(z)
        lam = eig.half_trace + rng.uniform(-1, 1) * eig.epsilon
        c = nuclear_curve(a, z, lam)
        if c.kind in (CurveKind.EMPTY, CurveKind.FULL_RANGE):
            continue
        pts = curve_points(c, rng.uniform(0, 2 * math.pi, pts_per_curve))
        sups = np.array([support_max(a, th) for th in thetas])
        proj = (np.exp(-1j * thetas)[None, :] * pts[:, None]).real
        worst = max(worst, float((proj - sups[None, :]).max()))
    assert worst <= tol, f"containment violated by {worst:.3e}"
    return f"worst support excess {worst:.2e} over {n}"


def check_n4_negation(n=1000, seed=104, tol=1e-9, samples=256):
    rng = np.random.default_rng(seed)
    grid = 2 * math.pi * np.arange(samples) / samples
    worst = 0.0
    for _ in range(n):
        a = _rand_matrix(rng)
        z = _rand_sym_admitting_zero(rng)
        neg = RealSym2(-z.a, -z.b, -z.c)
        c1 = nuclear_curve(a, z, 0.0)
        c2 = nuclear_curve(a, neg, 0.0)
        assert c1.kind not in (CurveKind.EMPTY,), "zero should be admissible"
        worst = max(worst, _hausdorff(curve_points(c1, grid), curve_points(c2, grid)))
    assert worst <= tol, f"negation symmetry broken: Hausdorff {worst:.3e}"
    return f"worst Hausdorff {worst:.2e} over {n}"


def check_n5_swap(n=1000, seed=105, tol=1e-9, samples=256):
    rng = np.random.default_rng(seed)
    grid = 2 * math.pi * np.arange(samples) / samples
    worst, nonempty = 0.0, 0
    for _ in range(n):
        x = rng.uniform(-2, 2, (2, 2))
        y = rng.uniform(-2, 2, (2, 2))
        x, y = 0.5 * (x + x.T), 0.5 * (y + y.T)
        zx = RealSym2.from_matrix((x - y).astype(complex))
        zy = RealSym2.from_matrix((y - x).astype(complex))
        c1 = nuclear_curve(x.astype(complex), zx, 0.0)
        c2 = nuclear_curve(y.astype(complex), zy, 0.0)
        assert (c1.kind is CurveKind.EMPTY) == (c2.kind is CurveKind.EMPTY)
        if c1.kind is CurveKind.EMPTY:
            continue
        nonempty += 1
        if CurveKind.FULL_RANGE in (c1.kind, c2.kind):
            continue
        worst = max(worst, _hausdorff(curve_points(c1, grid), curve_points(c2, grid)))
    assert nonempty > n // 4, "too few nonempty instances to be meaningful"
    assert worst <= tol, f"swap symmetry broken: Hausdorff {worst:.3e}"
    return f"worst Hausdorff {worst:.2e} over {nonempty} nonempty of {n}"


def check_n6_shift(n=1000, seed=106, tol=1e-9, samples=64):
    rng = np.random.default_rng(seed)
    grid = 2 * math.pi * np.arange(samples) / samples
    worst = 0.0
    for _ in range(n):
        a = _rand_matrix(rng)
        z = _rand_sym_admitting_zero(rng)
        s = rng.uniform(-3, 3)
        shifted = a + s * z.matrix()
        c1 = nuclear_curve(a, z, 0.0)
        c2 = nuclear_curve(shifted, z, 0.0)
        if c1.kind is CurveKind.FULL_RANGE:
            continue
        diff = np.abs(curve_points(c1, grid) - curve_points(c2, grid)).max()
        worst = max(worst, float(diff))
    assert worst <= tol, f"adding multiples of Z moved the curve by {worst:.3e}"
    return f"worst pointwise shift {worst:.2e} over {n}"


def check_n7_traceless_nonempty(n=1000, seed=107):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        a_val, b_val = rng.uniform(-2, 2, 2)
        z = RealSym2(a_val, b_val, -a_val)
        c = nuclear_curve(_rand_matrix(rng), z, 0.0)
        assert c.kind is not CurveKind.EMPTY, f"traceless Z gave empty set: {z}"
    return f"{n} traceless instances nonempty"


def check_n2_posdef_empty(n=1000, seed=108, delta=1e-6):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        while True:
            x = rng.uniform(-2, 2, (2, 2))
            if abs(np.linalg.det(x)) > 1e-6:
                break
        z = RealSym2.from_matrix((x.T @ x + delta * np.eye(2)).astype(complex))
        c = nuclear_curve(_rand_matrix(rng), z, 0.0)
        assert c.kind is CurveKind.EMPTY, f"positive definite Z gave {c.kind}"
    return f"{n} positive definite instances empty"


def check_n9_opposite_signs(n=1000, seed=109):
    rng = np.random.default_rng(seed)
    done = 0
    while done < n:
        z = _rand_sym(rng)
        lo, hi = symmetric_eig2(z).eigenvalues()
        if not lo < 0.0 < hi:
            continue
        c = nuclear_curve(_rand_matrix(rng), z, 0.0)
        assert c.kind is not CurveKind.EMPTY
        done += 1
    return f"{n} sign-straddling instances nonempty"


def check_n10_pointwise(n=1000, seed=110, tol=1e-8):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        a = _rand_matrix(rng)
        z = _rand_sym(rng, min_eps=1e-3)
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        lam_star = complex(v.conj() @ z.matrix() @ v).real
        target = complex(v.conj() @ a @ v)
        c = nuclear_curve(a, z, lam_star)
        assert c.kind is not CurveKind.EMPTY
        _, phi = angles_from_point(c, target)
        worst = max(worst, abs(curve_point(c, phi) - target))
    assert worst <= tol, f"state value missed the curve by {worst:.3e}"
    return f"worst reproduction {worst:.2e} over {n}"


def check_n8_discriminant(n=1000, seed=111, rel_tol=1e-9, samples=64):
    rng = np.random.default_rng(seed)
    grid = 2 * math.pi * np.arange(samples) / samples
    done = 0
    worst_rel, worst_resid = 0.0, 0.0
    while done < n:
        a = _rand_matrix(rng)
        z = _rand_sym(rng)
        eig = symmetric_eig2(z)
        lam = eig.half_trace + rng.uniform(-0.98, 0.98) * eig.epsilon
        c = nuclear_curve(a, z, lam)
        if c.kind not in (CurveKind.ELLIPSE, CurveKind.CIRCLE):
            continue
        con = conic_implicit(c)
        det = c.q.imag * c.r.real - c.q.real * c.r.imag
        disc = con.gamma**2 - 4 * con.alpha * con.beta
        expected = -4.0 / det**2
        worst_rel = max(worst_rel, abs(disc - expected) / abs(expected))
        pts = curve_points(c, grid)
        x = (pts.real - con.center.real) / con.scale
        y = (pts.imag - con.center.imag) / con.scale
        resid = con.alpha * x**2 + con.beta * y**2 + con.gamma * x * y - 1
        worst_resid = max(worst_resid, float(np.abs(resid).max()))
        done += 1
    assert worst_rel <= rel_tol, f"discriminant relative error {worst_rel:.3e}"
    assert worst_resid <= 1e-9, f"implicit-equation residual {worst_resid:.3e}"
    return f"worst rel {worst_rel:.2e}, worst residual {worst_resid:.2e} over {n}"


def check_p1_p2(n=1000, seed=112, tol=1e-9, dirs=16):
    rng = np.random.default_rng(seed)
    worst_aff, worst_uni = 0.0, 0.0
    for _ in range(n):
        a = _rand_matrix(rng)
        s = rng.uniform(0.2, 2.0) * rng.choice([-1.0, 1.0])
        t = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        base = numerical_range_boundary(a, dirs).values
        scaled = numerical_range_boundary(s * a + t * np.eye(2), dirs).values
        expected = s * base + t
        if s < 0:
            expected = np.roll(expected, dirs // 2)
        worst_aff = max(worst_aff, float(np.abs(scaled - expected).max()))
        # unitary invariance with a random unitary from QR
        q, r = np.linalg.qr(_rand_matrix(rng))
        q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
        rotated = numerical_range_boundary(q.conj().T @ a @ q, dirs).values
        worst_uni = max(worst_uni, float(np.abs(rotated - base).max()))
    assert worst_aff <= tol, f"affine covariance error {worst_aff:.3e}"
    assert worst_uni <= tol, f"unitary invariance error {worst_uni:.3e}"
    return f"worst affine {worst_aff:.2e}, worst unitary {worst_uni:.2e} over {n}"


def check_rank_k_bruteforce(n=1000, seed=113, tol=1e-12):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        for size in (2, 4):
            m = _rand_matrix(rng, size)
            h = 0.5 * (m + m.conj().T)
            desc = sorted(np.linalg.eigvalsh(h), reverse=True)
            for k in range(1, size + 1):
                got = hermitian_rank_k_interval(h, k)
                lo, hi = desc[size - k], desc[k - 1]
                if lo > hi:
                    assert got is None, f"expected empty for k={k}"
                else:
                    assert got is not None
                    assert abs(got[0] - lo) <= tol and abs(got[1] - hi) <= tol
    return f"{n} instances of both sizes, all ranks"
