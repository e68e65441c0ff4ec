"""Two-Kraus block-diagonal noise channels and their derived block operators.

Both worked models (the simplified two-qubit amplitude-damping channel and
the ten-parameter general block-diagonal channel) are built from printed
matrices; the block operators ``T_ij = A_i^dag A_j`` are always computed as
direct matrix products rather than from any shorthand entry table.

Trace preservation is enforced in the ``A1^dag A1 + A2^dag A2 = I`` form,
which is the condition the printed matrices of both models actually satisfy;
the swapped form ``A1 A1^dag + A2 A2^dag - I`` is reported alongside it by
:func:`check_trace_preserving` for diagnostic purposes (the two differ for
non-normal operators, e.g. the amplitude-damping pair).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .errors import DomainError, StructureError
from .linalg import check_finite

TRACE_TOL = 1e-10
BLOCK_TOL = 1e-12


@dataclass(frozen=True)
class KrausPair:
    """Two 4x4 Kraus operators with 2x2 block-diagonal structure."""

    a1: np.ndarray
    a2: np.ndarray


class TraceResiduals(NamedTuple):
    """Frobenius residuals of the two trace-preservation conventions."""

    dagger_left: float  # ||A1^dag A1 + A2^dag A2 - I||
    dagger_right: float  # ||A1 A1^dag + A2 A2^dag - I||


def check_trace_preserving(k: KrausPair, tol: float | None = None) -> TraceResiduals:
    """Residuals of both normalization conventions; never raises.

    ``tol`` is accepted for interface symmetry but unused: callers compare
    the returned residuals themselves.
    """
    a1, a2 = np.asarray(k.a1), np.asarray(k.a2)
    eye = np.eye(a1.shape[0])
    left = float(np.linalg.norm(a1.conj().T @ a1 + a2.conj().T @ a2 - eye))
    right = float(np.linalg.norm(a1 @ a1.conj().T + a2 @ a2.conj().T - eye))
    return TraceResiduals(left, right)


def _check_block_diagonal(m: np.ndarray, what: str, tol: float = BLOCK_TOL) -> None:
    off = max(float(np.abs(m[:2, 2:]).max()), float(np.abs(m[2:, :2]).max()))
    if off > tol:
        raise StructureError(f"{what} off-block entries reach {off:.3e}")


def validate_kraus_pair(k: KrausPair, tol: float = TRACE_TOL) -> KrausPair:
    """Enforce the KrausPair invariants: shape, block structure, trace."""
    a1 = check_finite(k.a1, "A1")
    a2 = check_finite(k.a2, "A2")
    if a1.shape != (4, 4) or a2.shape != (4, 4):
        raise DomainError("Kraus operators must be 4x4")
    _check_block_diagonal(a1, "A1", tol=0.0)
    _check_block_diagonal(a2, "A2", tol=0.0)
    res = check_trace_preserving(k)
    if res.dagger_left > tol:
        raise StructureError(
            f"trace preservation violated: residual {res.dagger_left:.3e}"
        )
    return k


@dataclass(frozen=True)
class ADParams:
    """Damping probabilities of the two-qubit amplitude-damping model."""

    p1: float
    p2: float

    def __post_init__(self):
        for name, p in (("p1", self.p1), ("p2", self.p2)):
            if not (math.isfinite(p) and 0.0 <= p <= 1.0):
                raise DomainError(f"{name} must lie in [0, 1], got {p}")


def build_ad(params: ADParams) -> KrausPair:
    """The printed amplitude-damping Kraus pair.

    ``A2`` has its only nonzero entries ``sqrt(p2)`` at (1, 2) and
    ``sqrt(p2 (1 - p1))`` at (3, 4) in 1-based indexing.
    """
    p1, p2 = params.p1, params.p2
    pp = p2 * (1.0 - p1)
    a1 = np.zeros((4, 4), dtype=complex)
    a1[0, 1] = math.sqrt(1.0 - p2)
    a1[1, 0] = 1.0
    a1[2, 2] = 1.0
    a1[3, 3] = math.sqrt(1.0 - pp)
    a2 = np.zeros((4, 4), dtype=complex)
    a2[0, 1] = math.sqrt(p2)
    a2[2, 3] = math.sqrt(pp)
    return validate_kraus_pair(KrausPair(a1, a2))


@dataclass(frozen=True)
class GeneralParams:
    """Ten free parameters of the general block-diagonal channel.

    The six dependent entries ``b`` and the two shorthand radicals ``c``
    are computed at construction; any negative radicand or vanishing
    denominator raises :class:`DomainError` naming the first violated
    constraint.
    """

    a: tuple[float, ...]
    b: tuple[float, ...]
    c: tuple[float, float]

    @classmethod
    def from_vector(cls, a) -> "GeneralParams":
        a = tuple(float(x) for x in a)
        if len(a) != 10:
            raise DomainError(f"expected 10 parameters, got {len(a)}")
        for i, x in enumerate(a, start=1):
            if not (math.isfinite(x) and 0.0 < x < 1.0):
                raise DomainError(f"a{i} must lie in (0, 1), got {x}")
        a1, a2, a3, a4, a5, a6, a7, a8, a9, a10 = a

        rad_b1 = 1.0 - a1 * a1 - a3 * a3 - a9 * a9
        rad_b4 = 1.0 - a5 * a5 - a7 * a7 - a10 * a10
        rad_c1 = (
            (a4 * a4 - 1.0) * a1 * a1
            - 2.0 * a1 * a2 * a3 * a4
            - a4 * a4
            + (a2 * a2 - 1.0) * (a3 * a3 - 1.0)
        )
        rad_c2 = (
            (a8 * a8 - 1.0) * a5 * a5
            - 2.0 * a5 * a6 * a7 * a8
            - a8 * a8
            + (a6 * a6 - 1.0) * (a7 * a7 - 1.0)
        )
        for name, rad in (
            ("b1", rad_b1),
            ("b4", rad_b4),
            ("c1", rad_c1),
            ("c2", rad_c2),
        ):
            if rad < 0.0:
                raise DomainError(f"{name} radicand negative: {rad:.6g}")
        den1 = a1 * a1 + a3 * a3 - 1.0
        den2 = a5 * a5 + a7 * a7 - 1.0
        for name, den in (("a1^2+a3^2-1", den1), ("a5^2+a7^2-1", den2)):
            if den == 0.0:
                raise DomainError(f"denominator {name} vanishes")

        b1 = math.sqrt(rad_b1)
        b4 = math.sqrt(rad_b4)
        c1 = math.sqrt(rad_c1)
        c2 = math.sqrt(rad_c2)
        b2 = ((a1 * a2 + a3 * a4) * b1 - c1 * a9) / den1
        b3 = ((a1 * a2 + a3 * a4) * a9 + c1 * b1) / den1
        b5 = ((a5 * a6 + a7 * a8) * b4 - c2 * a10) / den2
        b6 = ((a5 * a6 + a7 * a8) * a10 + c2 * b4) / den2
        return cls(a=a, b=(b1, b2, b3, b4, b5, b6), c=(c1, c2))


def build_general(params: GeneralParams) -> KrausPair:
    """Kraus pair of the general channel from its resolved parameters."""
    a1, a2, a3, a4, a5, a6, a7, a8, a9, a10 = params.a
    b1, b2, b3, b4, b5, b6 = params.b
    m1 = np.array(
        [
            [a1, a2, 0, 0],
            [a3, a4, 0, 0],
            [0, 0, a5, a6],
            [0, 0, a7, a8],
        ],
        dtype=complex,
    )
    m2 = np.array(
        [
            [b1, b2, 0, 0],
            [a9, b3, 0, 0],
            [0, 0, b4, b5],
            [0, 0, a10, b6],
        ],
        dtype=complex,
    )
    return validate_kraus_pair(KrausPair(m1, m2))


def sample_general_params(
    rng: np.random.Generator, max_tries: int = 10000
) -> GeneralParams:
    """Rejection-sample a valid parameter vector (test helper)."""
    for _ in range(max_tries):
        vec = rng.uniform(0.05, 0.95, size=10)
        try:
            return GeneralParams.from_vector(vec)
        except DomainError:
            continue
    raise RuntimeError("rejection sampling failed to find a valid vector")


@dataclass(frozen=True)
class BlockOperators:
    """The four ``T_ij`` operators and their extracted 2x2 blocks.

    ``t21 = t12^dag`` and ``t22 = I - t11`` hold by construction; ``e11``
    and ``f11`` are Hermitian with spectra in ``[0, 1]``.
    """

    t11: np.ndarray
    t12: np.ndarray
    t21: np.ndarray
    t22: np.ndarray
    e11: np.ndarray
    e12: np.ndarray
    f11: np.ndarray
    f12: np.ndarray


def derive_blocks(k: KrausPair) -> BlockOperators:
    """Compute ``T_11 = A1^dag A1`` and ``T_12 = A1^dag A2`` and split them."""
    a1 = check_finite(k.a1, "A1")
    a2 = check_finite(k.a2, "A2")
    t11 = a1.conj().T @ a1
    t12 = a1.conj().T @ a2
    _check_block_diagonal(t11, "T11")
    _check_block_diagonal(t12, "T12")
    for name, blk in (("E11", t11[:2, :2]), ("F11", t11[2:, 2:])):
        if float(np.linalg.norm(blk - blk.conj().T)) > 1e-10:
            raise StructureError(f"{name} is not Hermitian")
        eigs = np.linalg.eigvalsh(blk)
        if eigs[0] < -1e-10 or eigs[-1] > 1.0 + 1e-10:
            raise StructureError(f"{name} spectrum {eigs} escapes [0, 1]")
    return BlockOperators(
        t11=t11,
        t12=t12,
        t21=t12.conj().T,
        t22=np.eye(4, dtype=complex) - t11,
        e11=t11[:2, :2],
        e12=t12[:2, :2],
        f11=t11[2:, 2:],
        f12=t12[2:, 2:],
    )


@dataclass(frozen=True)
class ADChannel:
    params: ADParams

    def kraus_pair(self) -> KrausPair:
        return build_ad(self.params)


@dataclass(frozen=True)
class GeneralChannel:
    params: GeneralParams

    def kraus_pair(self) -> KrausPair:
        return build_general(self.params)


@dataclass(frozen=True)
class RawChannel:
    pair: KrausPair

    def kraus_pair(self) -> KrausPair:
        return validate_kraus_pair(self.pair)


Channel = Union[ADChannel, GeneralChannel, RawChannel]


def channel_to_json(channel: Channel) -> dict:
    """JSON document form of a channel description."""
    from .serialize import matrix_to_json

    if isinstance(channel, ADChannel):
        return {"kind": "ad", "p1": channel.params.p1, "p2": channel.params.p2}
    if isinstance(channel, GeneralChannel):
        return {"kind": "general", "a": list(channel.params.a)}
    if isinstance(channel, RawChannel):
        return {
            "kind": "raw",
            "a1": matrix_to_json(channel.pair.a1),
            "a2": matrix_to_json(channel.pair.a2),
        }
    raise DomainError(f"unknown channel type {type(channel)!r}")


def channel_from_json(doc: dict) -> Channel:
    """Parse a channel description; inverse of :func:`channel_to_json`."""
    from .serialize import matrix_from_json

    if not isinstance(doc, dict) or "kind" not in doc:
        raise DomainError("channel document must be an object with a 'kind'")
    kind = doc["kind"]
    if kind == "ad":
        return ADChannel(ADParams(float(doc["p1"]), float(doc["p2"])))
    if kind == "general":
        return GeneralChannel(GeneralParams.from_vector(doc["a"]))
    if kind == "raw":
        pair = KrausPair(
            matrix_from_json(doc["a1"], shape=(4, 4)),
            matrix_from_json(doc["a2"], shape=(4, 4)),
        )
        return RawChannel(pair)
    raise DomainError(f"unknown channel kind {kind!r}")
