"""Fixed-size complex linear algebra and the closed-form 2x2 spectral split.

Matrices are plain ``numpy.ndarray`` of complex128; 2x2 real symmetric
matrices additionally travel as :class:`RealSym2` in the half-diagonal
parametrization ``[[2a, b], [b, 2c]]`` used by the curve machinery, so that
``half_trace = a + c`` and the traceless part has eigenvalues ``+/-epsilon``
with ``epsilon = sqrt(b^2 + (a-c)^2)``.

The diagonalizer convention is pinned once here and everything else in the
package derives from it: ``U(alpha)`` below is the proper rotation whose
columns are the eigenvectors of the traceless part, with
``2*alpha = atan2(b, a - c)`` mapped into ``[0, 2*pi)``. With this branch
``U(0) = I``, so already-diagonal matrices need no basis change, and the
curve coefficients in :mod:`nucrange.ranges` carry no stray sign factors.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

#: Default tolerance for exact-identity checks (adjoint involution, trace
#: cyclicity, eigendecomposition reconstruction).
RECONSTRUCTION_TOL = 1e-12


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.asarray(a) @ np.asarray(b)


def mat_add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.asarray(a) + np.asarray(b)


def scalar_mul(s: complex, a: np.ndarray) -> np.ndarray:
    return s * np.asarray(a)


def adjoint(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).conj().T


def trace(a: np.ndarray) -> complex:
    return complex(np.trace(np.asarray(a)))


def frobenius_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def check_finite(a: np.ndarray, what: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(a.view(float))):
        raise DomainError(f"{what} contains non-finite entries")
    return a


@dataclass(frozen=True)
class RealSym2:
    """Real symmetric 2x2 matrix ``[[2a, b], [b, 2c]]``."""

    a: float
    b: float
    c: float

    def matrix(self) -> np.ndarray:
        return np.array(
            [[2.0 * self.a, self.b], [self.b, 2.0 * self.c]], dtype=complex
        )

    @classmethod
    def from_matrix(cls, m: np.ndarray, tol: float = 1e-10) -> "RealSym2":
        """Build from a dense matrix, rejecting non-real-symmetric input."""
        m = check_finite(m, "RealSym2 source")
        if m.shape != (2, 2):
            raise DomainError("RealSym2 source must be 2x2")
        if abs(m[0, 1] - m[1, 0]) > tol or float(np.abs(m.imag).max()) > tol:
            raise DomainError("matrix is not real symmetric within tolerance")
        return cls(
            a=float(m[0, 0].real) / 2.0,
            b=float((m[0, 1] + m[1, 0]).real) / 2.0,
            c=float(m[1, 1].real) / 2.0,
        )


@dataclass(frozen=True)
class SymEig2:
    """Closed-form spectral data of a :class:`RealSym2`.

    ``epsilon`` and ``half_trace`` give eigenvalues ``half_trace +/- epsilon``;
    ``rotation_angle`` is the alpha of the diagonalizing rotation, in
    ``[0, pi)``. ``degenerate`` marks the scalar case ``Z = (a+c) I``.
    """

    epsilon: float
    half_trace: float
    rotation_angle: float
    degenerate: bool = False

    def eigenvalues(self) -> tuple[float, float]:
        """Eigenvalues sorted ascending."""
        return self.half_trace - self.epsilon, self.half_trace + self.epsilon


def symmetric_eig2(z: RealSym2) -> SymEig2:
    """Spectral decomposition of ``[[2a, b], [b, 2c]]`` without iteration.

    The rotation angle solves ``tan(2*alpha) = b / (a - c)`` on the branch
    ``2*alpha = atan2(b, a - c)`` lifted into ``[0, 2*pi)``; the degenerate
    case ``b = 0, a = c`` returns ``epsilon = 0`` with ``alpha = 0``.
    """
    m = z.a - z.c
    eps = math.hypot(z.b, m)
    if eps == 0.0:
        return SymEig2(0.0, z.a + z.c, 0.0, degenerate=True)
    two_alpha = math.atan2(z.b, m)
    if two_alpha < 0.0:
        two_alpha += 2.0 * math.pi
    return SymEig2(eps, z.a + z.c, 0.5 * two_alpha)


def diagonalizer(alpha: float) -> np.ndarray:
    """Rotation whose columns are the eigenvectors for ``+eps`` and ``-eps``."""
    c, s = math.cos(alpha), math.sin(alpha)
    return np.array([[c, -s], [s, c]], dtype=complex)


def build_state(alpha: float, theta: float, phi: float) -> np.ndarray:
    """Unit state ``U(alpha) @ (cos(theta/2), e^{i phi} sin(theta/2))``.

    This is the generating-state family of the curve parametrization: theta
    fixes the constrained expectation value, phi sweeps the curve, alpha
    rotates into the eigenbasis of the constraint matrix.
    """
    ch = math.cos(0.5 * theta)
    sh = math.sin(0.5 * theta) * cmath.exp(1j * phi)
    ca, sa = math.cos(alpha), math.sin(alpha)
    return np.array([ca * ch - sa * sh, sa * ch + ca * sh], dtype=complex)


def expectation(a: np.ndarray, psi: np.ndarray) -> complex:
    """``<psi| a |psi>`` for a unit vector ``psi``."""
    return complex(psi.conj() @ (np.asarray(a) @ psi))


def bloch_angles(psi: np.ndarray) -> tuple[float, float]:
    """Polar/azimuthal angles ``(t, u)`` with ``psi ~ (cos t/2, e^{iu} sin t/2)``.

    The global phase is discarded; ``u`` is 0 when the second component
    vanishes.
    """
    a0, a1 = complex(psi[0]), complex(psi[1])
    t = 2.0 * math.atan2(abs(a1), abs(a0))
    u = 0.0
    if abs(a1) > 0.0 and abs(a0) > 0.0:
        u = cmath.phase(a1 / a0) % (2.0 * math.pi)
    return t, u
