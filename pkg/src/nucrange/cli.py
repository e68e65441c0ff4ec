"""Command-line interface.

Exit codes: 0 on success, 1 on domain/validation failures (one
machine-parseable ``error: <code>: <message>`` line on stderr), 2 on usage
errors. All outputs are deterministic: rerunning an invocation yields
byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import serialize
from .channels import (
    ADChannel,
    ADParams,
    GeneralChannel,
    GeneralParams,
    RawChannel,
    channel_from_json,
    channel_to_json,
    derive_blocks,
)
from .errors import DomainError, NucrangeError
from .linalg import RealSym2
from .oracle import cloud_range, sample_kernel_states
from .ranges import (
    CurveKind,
    RangeSamples,
    curve_samples,
    nuclear_curve,
    numerical_range_boundary,
)
from .solver import SolverConfig, ad_closed_form, solve, verify_kl


def _load_json_arg(text: str):
    """Accept inline JSON or a path to a JSON file."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        path = Path(text)
        if not path.exists():
            raise DomainError(f"not valid JSON and not a file: {text!r}")
        return json.loads(path.read_text())


def _matrix_arg(text: str, shape) -> np.ndarray:
    return serialize.matrix_from_json(_load_json_arg(text), shape=shape)


def _realsym_arg(text: str) -> RealSym2:
    parts = text.split(",")
    if len(parts) != 3:
        raise DomainError('constraint matrix must be "a,b,c"')
    try:
        return RealSym2(*(float(p) for p in parts))
    except ValueError as exc:
        raise DomainError(f"bad constraint value: {exc}")


def _sweep_arg(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError('sweep must be "lo:hi:steps"')
    lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if steps < 1:
        raise DomainError("sweep needs at least one step")
    return np.linspace(lo, hi, steps)


def _write(path: str, text: str) -> None:
    Path(path).write_text(text)


def _solver_config(args) -> SolverConfig:
    return SolverConfig(lambda_grid=args.grid, kl_tol=args.tol)


def _nuclear_samples(a: np.ndarray, z: RealSym2, lam: float, n: int) -> RangeSamples:
    """Curve samples, falling back to the standard range when unconstrained."""
    c = nuclear_curve(a, z, lam)
    if c.kind is CurveKind.FULL_RANGE:
        base = numerical_range_boundary(a, n)
        return RangeSamples(base.values, base.phi, np.full(n, lam))
    if c.kind is CurveKind.EMPTY:
        return RangeSamples(np.empty(0, complex), np.empty(0), np.empty(0))
    return curve_samples(c, n)


def _emit_samples(curves: list[RangeSamples], args) -> None:
    if args.format == "svg":
        drawable = [c for c in curves if len(c.values)]
        if not drawable:
            raise DomainError("nothing to draw: all curves are empty")
        _write(args.out, serialize.render_svg(drawable))
        return
    if len(curves) == 1:
        _write(args.out, serialize.range_samples_to_csv(curves[0]))
        return
    values = np.concatenate([c.values for c in curves])
    phi = np.concatenate([c.phi for c in curves])
    lam = np.concatenate([c.lam for c in curves])
    _write(args.out, serialize.range_samples_to_csv(RangeSamples(values, phi, lam)))


def _cmd_range(args) -> int:
    a = _matrix_arg(args.A, (2, 2))
    _emit_samples([numerical_range_boundary(a, args.n)], args)
    return 0


def _cmd_nuclear_range(args) -> int:
    a = _matrix_arg(args.A, (2, 2))
    z = _realsym_arg(args.Z)
    if args.lambda_sweep is not None:
        lams = _sweep_arg(args.lambda_sweep)
    elif args.lam is not None:
        lams = np.array([args.lam])
    else:
        raise DomainError("either --lambda or --lambda-sweep is required")
    curves = [_nuclear_samples(a, z, float(lv), args.n) for lv in lams]
    _emit_samples(curves, args)
    return 0


def _solutions_doc(channel, solutions) -> str:
    return serialize.dump_json(
        {
            "channel": channel_to_json(channel),
            "solutions": [serialize.solution_to_json(s) for s in solutions],
        }
    )


def _cmd_solve_ad(args) -> int:
    channel = ADChannel(ADParams(args.p1, args.p2))
    if args.scan:
        solutions = solve(channel, _solver_config(args))
    else:
        solutions = [ad_closed_form(channel.params)]
    _write(args.out, _solutions_doc(channel, solutions))
    return 0


def _cmd_solve_general(args) -> int:
    try:
        vec = [float(x) for x in args.a.split(",")]
    except ValueError as exc:
        raise DomainError(f"bad parameter vector: {exc}")
    channel = GeneralChannel(GeneralParams.from_vector(vec))
    solutions = solve(channel, _solver_config(args))
    _write(args.out, _solutions_doc(channel, solutions))
    return 0


def _cmd_solve_raw(args) -> int:
    channel = channel_from_json(_load_json_arg(args.channel))
    solutions = solve(channel, _solver_config(args))
    _write(args.out, _solutions_doc(channel, solutions))
    return 0


def _cmd_verify(args) -> int:
    channel = channel_from_json(_load_json_arg(args.channel))
    p2 = _matrix_arg(args.p2, (4, 4))
    blocks = derive_blocks(channel.kraus_pair())
    lam, residuals = verify_kl(p2, blocks)
    doc = {
        "lambda": serialize.matrix_to_json(lam),
        "residuals": [float(r) for r in residuals],
    }
    _write(args.out, serialize.dump_json(doc))
    return 0


def _cmd_oracle(args) -> int:
    a = _matrix_arg(args.A, (2, 2))
    z = _matrix_arg(args.Z, (2, 2))
    cloud = sample_kernel_states(z, args.n, tol=args.tol, seed=args.seed)
    if len(cloud):
        exp_a = cloud_range(a, cloud).values
    else:
        exp_a = np.empty(0, complex)
    _write(args.out, serialize.cloud_to_csv(cloud, exp_a))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nucrange",
        description="Constrained numerical ranges and QEC codes for "
        "block-diagonal two-Kraus channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("--out", required=True, help="output file path")

    def add_solver_opts(p):
        p.add_argument("--grid", type=int, default=1000, help="lambda grid size")
        p.add_argument("--tol", type=float, default=1e-10, help="residual tolerance")

    p = sub.add_parser("range", help="standard numerical range boundary")
    p.add_argument("--A", required=True, help="2x2 matrix as JSON or a file path")
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    add_out(p)
    p.set_defaults(func=_cmd_range)

    p = sub.add_parser("nuclear-range", help="constrained range curve")
    p.add_argument("--A", required=True)
    p.add_argument("--Z", required=True, help='real symmetric [[2a,b],[b,2c]] as "a,b,c"')
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--lambda-sweep", dest="lambda_sweep", default=None, help="lo:hi:steps")
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    add_out(p)
    p.set_defaults(func=_cmd_nuclear_range)

    p = sub.add_parser("solve-ad", help="amplitude-damping code synthesis")
    p.add_argument("--p1", type=float, required=True)
    p.add_argument("--p2", type=float, required=True)
    p.add_argument("--scan", action="store_true", help="run the grid scan instead of the closed form")
    add_solver_opts(p)
    add_out(p)
    p.set_defaults(func=_cmd_solve_ad)

    p = sub.add_parser("solve-general", help="ten-parameter channel code synthesis")
    p.add_argument("--a", required=True, help="10 comma-separated reals in (0, 1)")
    add_solver_opts(p)
    add_out(p)
    p.set_defaults(func=_cmd_solve_general)

    p = sub.add_parser("solve-raw", help="code synthesis for a channel JSON file")
    p.add_argument("--channel", required=True, help="channel JSON or file path")
    add_solver_opts(p)
    add_out(p)
    p.set_defaults(func=_cmd_solve_raw)

    p = sub.add_parser("verify", help="check compression conditions of a projector")
    p.add_argument("--channel", required=True)
    p.add_argument("--p2", required=True, help="4x4 projector as JSON or file path")
    add_out(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="Monte Carlo constrained-state cloud")
    p.add_argument("--A", required=True)
    p.add_argument("--Z", required=True, help="2x2 complex matrix as JSON or file path")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    add_out(p)
    p.set_defaults(func=_cmd_oracle)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NucrangeError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
