"""Nuclear numerical ranges and QEC codes for block-diagonal two-Kraus channels."""

from ._kernels import backend_name
from .channels import (
    ADChannel,
    ADParams,
    BlockOperators,
    Channel,
    GeneralChannel,
    GeneralParams,
    KrausPair,
    RawChannel,
    build_ad,
    build_general,
    channel_from_json,
    channel_to_json,
    check_trace_preserving,
    derive_blocks,
    sample_general_params,
    validate_kraus_pair,
)
from .linalg import (
    RealSym2,
    SymEig2,
    adjoint,
    build_state,
    diagonalizer,
    expectation,
    frobenius_norm,
    symmetric_eig2,
)
from .oracle import StateCloud, cloud_range, cross_check_curve, sample_kernel_states
from .ranges import (
    ConicImplicit,
    CurveKind,
    NuclearCurve,
    RangeSamples,
    angles_from_point,
    conic_implicit,
    curve_point,
    curve_points,
    curve_samples,
    hermitian_rank_k_interval,
    nuclear_curve,
    numerical_range_boundary,
    support_max,
)
from .solver import (
    CodeSolution,
    GammaPoint,
    OmegaInterval,
    SolverConfig,
    ad_closed_form,
    gamma,
    omega,
    solve,
    verify_kl,
)

__version__ = "0.1.0"

__all__ = [
    "ADChannel",
    "ADParams",
    "BlockOperators",
    "Channel",
    "CodeSolution",
    "ConicImplicit",
    "CurveKind",
    "GammaPoint",
    "GeneralChannel",
    "GeneralParams",
    "KrausPair",
    "NuclearCurve",
    "OmegaInterval",
    "RangeSamples",
    "RawChannel",
    "RealSym2",
    "SolverConfig",
    "StateCloud",
    "SymEig2",
    "ad_closed_form",
    "adjoint",
    "angles_from_point",
    "backend_name",
    "build_ad",
    "build_general",
    "build_state",
    "channel_from_json",
    "channel_to_json",
    "check_trace_preserving",
    "cloud_range",
    "conic_implicit",
    "cross_check_curve",
    "curve_point",
    "curve_points",
    "curve_samples",
    "derive_blocks",
    "diagonalizer",
    "expectation",
    "frobenius_norm",
    "gamma",
    "hermitian_rank_k_interval",
    "nuclear_curve",
    "numerical_range_boundary",
    "omega",
    "sample_general_params",
    "sample_kernel_states",
    "solve",
    "support_max",
    "symmetric_eig2",
    "validate_kraus_pair",
    "verify_kl",
]
