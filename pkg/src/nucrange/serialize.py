"""Deterministic JSON / CSV / SVG emission.

Conventions (documented for consumers):

* complex numbers serialize as two-element arrays ``[re, im]``; matrices are
  row-major nested lists of those pairs;
* CSV floats use fixed 17-significant-digit formatting (``%.17g``);
* JSON floats use Python's shortest round-trip ``repr`` — lossless on
  reload, slightly shorter than 17 digits where possible;
* identical inputs produce byte-identical documents (no timestamps, no
  unordered containers).
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import DomainError


def fmt(x: float) -> str:
    """17-significant-digit decimal form used in CSV and SVG output."""
    return f"{float(x):.17g}"


def complex_to_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def pair_to_complex(doc) -> complex:
    if not (isinstance(doc, (list, tuple)) and len(doc) == 2):
        raise DomainError(f"complex entry must be [re, im], got {doc!r}")
    z = complex(float(doc[0]), float(doc[1]))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("complex entry is not finite")
    return z


def matrix_to_json(m: np.ndarray) -> list[list[list[float]]]:
    m = np.asarray(m, dtype=complex)
    return [[complex_to_pair(m[i, j]) for j in range(m.shape[1])] for i in range(m.shape[0])]


def matrix_from_json(doc, shape: tuple[int, int] | None = None) -> np.ndarray:
    if not isinstance(doc, list) or not doc or not isinstance(doc[0], list):
        raise DomainError("matrix must be a nested list of [re, im] pairs")
    rows = [[pair_to_complex(e) for e in row] for row in doc]
    m = np.array(rows, dtype=complex)
    if shape is not None and m.shape != shape:
        raise DomainError(f"matrix shape {m.shape} != expected {shape}")
    return m


def vector_to_json(v: np.ndarray) -> list[list[float]]:
    return [complex_to_pair(z) for z in np.asarray(v, dtype=complex)]


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def solution_to_json(sol) -> dict:
    """CodeSolution wire format."""
    return {
        "lambda11": float(sol.lam[0, 0].real),
        "lambda12": complex_to_pair(sol.lam[0, 1]),
        "lambda21": complex_to_pair(sol.lam[1, 0]),
        "lambda22": float(sol.lam[1, 1].real),
        "psiE": vector_to_json(sol.psi_e),
        "psiF": vector_to_json(sol.psi_f),
        "p2": matrix_to_json(sol.p2),
        "residuals": [float(r) for r in sol.residuals],
    }


def range_samples_to_csv(samples) -> str:
    """CSV with header ``re,im,phi,lambda`` (lambda empty for standard ranges)."""
    lines = ["re,im,phi,lambda"]
    lam = samples.lam
    for k, z in enumerate(samples.values):
        lam_field = "" if lam is None else fmt(lam[k])
        lines.append(f"{fmt(z.real)},{fmt(z.imag)},{fmt(samples.phi[k])},{lam_field}")
    return "\n".join(lines) + "\n"


def cloud_to_csv(cloud, exp_a: np.ndarray) -> str:
    """State-cloud CSV; a leading comment records the PRNG and seed."""
    lines = [
        f"# algorithm={cloud.algorithm} seed={cloud.seed} tol={fmt(cloud.constraint_tol)}",
        "psi0_re,psi0_im,psi1_re,psi1_im,expZ_re,expZ_im,expA_re,expA_im",
    ]
    for k in range(cloud.states.shape[0]):
        s0, s1 = cloud.states[k]
        ez = cloud.exp_z[k]
        ea = exp_a[k]
        lines.append(
            ",".join(
                fmt(v)
                for v in (s0.real, s0.imag, s1.real, s1.imag, ez.real, ez.imag, ea.real, ea.imag)
            )
        )
    return "\n".join(lines) + "\n"


_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_SVG_SIZE = 640.0
_SVG_PAD = 40.0


def render_svg(curves, markers=()) -> str:
    """Fixed-styling SVG: one polyline per curve, circles at marker points.

    Output is a pure function of the input samples, so identical calls give
    byte-identical documents.
    """
    if not curves:
        raise DomainError("render_svg needs at least one curve")
    xs = np.concatenate([np.asarray(c.values).real for c in curves])
    ys = np.concatenate([np.asarray(c.values).imag for c in curves])
    if markers:
        xs = np.concatenate([xs, [z.real for z in markers]])
        ys = np.concatenate([ys, [z.imag for z in markers]])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    span = max(x1 - x0, y1 - y0, 1e-6)
    x0, x1 = 0.5 * (x0 + x1) - 0.55 * span, 0.5 * (x0 + x1) + 0.55 * span
    y0, y1 = 0.5 * (y0 + y1) - 0.55 * span, 0.5 * (y0 + y1) + 0.55 * span
    inner = _SVG_SIZE - 2.0 * _SVG_PAD

    def px(x: float) -> str:
        return fmt(_SVG_PAD + (x - x0) / (x1 - x0) * inner)

    def py(y: float) -> str:
        return fmt(_SVG_PAD + (y1 - y) / (y1 - y0) * inner)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(_SVG_SIZE)}" '
        f'height="{int(_SVG_SIZE)}" viewBox="0 0 {int(_SVG_SIZE)} {int(_SVG_SIZE)}">',
        f'<rect width="{int(_SVG_SIZE)}" height="{int(_SVG_SIZE)}" fill="white"/>',
    ]
    if x0 < 0.0 < x1:
        out.append(
            f'<line x1="{px(0.0)}" y1="{py(y0)}" x2="{px(0.0)}" y2="{py(y1)}" '
            'stroke="#999999" stroke-width="1"/>'
        )
    if y0 < 0.0 < y1:
        out.append(
            f'<line x1="{px(x0)}" y1="{py(0.0)}" x2="{px(x1)}" y2="{py(0.0)}" '
            'stroke="#999999" stroke-width="1"/>'
        )
    for i, c in enumerate(curves):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        pts = " ".join(f"{px(z.real)},{py(z.imag)}" for z in np.asarray(c.values))
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
    for z in markers:
        out.append(
            f'<circle cx="{px(z.real)}" cy="{py(z.imag)}" r="5" fill="#d62728"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
