"""Command-line front end: verify suites, evolve states, dump operators.

Exit status contract: 0 means every check passed (flagged records are
allowed), 1 means at least one check failed, 2 means the invocation or its
input files were unusable.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .deformed import (
    ProfileError,
    build_generalized_frame,
    build_ladder_operators,
    generalized_number_shift,
)
from .evolution import hamiltonian, time_evolution
from .numerics import (
    StateVector,
    TolerancePolicy,
    equal_up_to_global_phase,
    mat_apply,
    mat_power,
    max_abs,
)
from .pegg_barnett import (
    SpaceConfig,
    build_phase_frame,
    commutator,
    commutator_closed_form,
    commutator_double_sum,
    hermitian_phase_operator,
    number_operator,
    number_shift_operator,
    unitary_phase_operator,
)
from .report import (
    REPORT_FORMATS,
    RunManifest,
    render_csv,
    render_json,
    render_pretty,
    to_json,
)
from .suites import SUITE_NAMES, resolve_profile, run_suites

__all__ = ["UsageError", "main", "build_parser", "load_state"]

TWO_PI = 2.0 * math.pi

DUMP_OBJECTS = (
    "phase-states",
    "phi",
    "exp-iphi",
    "qN",
    "A",
    "Adag",
    "H",
    "commutators",
)

_RENDERERS = {"json": render_json, "csv": render_csv, "pretty": render_pretty}


class UsageError(Exception):
    """Bad invocation or unusable input; maps to exit status 2."""


def _add_space_args(parser: argparse.ArgumentParser, dim_required: bool = True) -> None:
    parser.add_argument(
        "--dim",
        type=int,
        required=dim_required,
        default=None,
        help="Hilbert space dimension s+1",
    )
    parser.add_argument("--theta0", type=float, default=0.0, help="phase window origin")
    parser.add_argument(
        "--eta", type=float, default=0.5, help="spectrum offset of the deformed ladder"
    )
    parser.add_argument("--omega", type=float, default=1.0, help="angular frequency")
    parser.add_argument(
        "--profile",
        default="linear",
        help="deformation weights: 'linear' or a path to a JSON array",
    )
    parser.add_argument(
        "--seed", type=int, default=0, help="seed for randomized state checks"
    )
    parser.add_argument(
        "--out", type=Path, default=None, help="output file (default: stdout)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdphase",
        description=(
            "Verify, evolve, and dump phase-operator constructions on a "
            "finite-dimensional Hilbert space."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run verification suites and emit a report")
    _add_space_args(verify)
    verify.add_argument(
        "--suite",
        action="append",
        dest="suites",
        choices=(*SUITE_NAMES, "all"),
        default=None,
        help="suite to run (repeatable; default: all)",
    )
    verify.add_argument(
        "--format", choices=REPORT_FORMATS, default="json", help="report format"
    )
    verify.set_defaults(func=cmd_verify)

    evolve = sub.add_parser("evolve", help="apply a one-cycle route to a state file")
    evolve.add_argument("state_file", type=Path, help="input state JSON")
    evolve.add_argument(
        "--mode",
        choices=("hamiltonian", "shift"),
        required=True,
        help="hamiltonian: U(2 pi/omega)^steps; shift: (q^-(N+eta))^steps",
    )
    evolve.add_argument("--steps", type=int, default=1, help="number of applications")
    _add_space_args(evolve, dim_required=False)
    evolve.set_defaults(func=cmd_evolve)

    dump = sub.add_parser("dump", help="write an operator or state family as JSON")
    dump.add_argument("object", choices=DUMP_OBJECTS, help="object to dump")
    _add_space_args(dump)
    dump.set_defaults(func=cmd_dump)

    return parser


def _write_output(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _space_config(dim: int, theta0: float) -> SpaceConfig:
    try:
        return SpaceConfig.from_dim(dim, theta0)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _pairs(values: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in values]


def _matrix_json(entries: np.ndarray) -> list:
    return [_pairs(row) for row in entries]


def load_state(path: Path) -> StateVector:
    """Read a state file: {"dim": int, "amp": [[re, im], ...]}."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read state file: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"state file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "dim" not in data or "amp" not in data:
        raise UsageError("state file must be a JSON object with 'dim' and 'amp'")
    dim = data["dim"]
    amp = data["amp"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise UsageError(f"state 'dim' must be a positive integer, got {dim!r}")
    if not isinstance(amp, list) or len(amp) != dim:
        raise UsageError("state 'amp' must list one [re, im] pair per dimension")
    values = []
    for pair in amp:
        ok = (
            isinstance(pair, list)
            and len(pair) == 2
            and all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair
            )
        )
        if not ok:
            raise UsageError("state amplitudes must be [re, im] pairs of reals")
        values.append(complex(pair[0], pair[1]))
    try:
        return StateVector(np.asarray(values, dtype=np.complex128))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_verify(args: argparse.Namespace) -> int:
    selected = args.suites or ["all"]
    suites = SUITE_NAMES if "all" in selected else tuple(dict.fromkeys(selected))
    try:
        manifest = RunManifest(
            dim=args.dim,
            theta0=args.theta0,
            eta=args.eta,
            omega=args.omega,
            profile=args.profile,
            suites=suites,
            seed=args.seed,
            format=args.format,
        )
        report = run_suites(manifest)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from exc
    _write_output(_RENDERERS[manifest.format](report), args.out)
    counts = report.status_counts()
    print(
        "verify: %d checks | pass %d | flagged %d | fail %d"
        % (len(report.records), counts["pass"], counts["flagged"], counts["fail"]),
        file=sys.stderr,
    )
    return 1 if counts["fail"] else 0


def cmd_evolve(args: argparse.Namespace) -> int:
    state = load_state(args.state_file)
    dim = state.dim if args.dim is None else args.dim
    if args.dim is not None and args.dim != state.dim:
        raise UsageError(
            f"state dimension {state.dim} does not match --dim {args.dim}"
        )
    if args.steps < 0:
        raise UsageError(f"steps must be non-negative, got {args.steps}")
    config = _space_config(dim, args.theta0)
    policy = TolerancePolicy.for_dim(dim)

    notes = []
    psi = state
    if not state.is_normalized(policy.tol_norm):
        print(
            "warning: input state is not normalized; renormalizing",
            file=sys.stderr,
        )
        try:
            psi = state.normalized()
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        notes.append("input state was not normalized; renormalized before evolving")

    try:
        if args.mode == "hamiltonian":
            if args.omega <= 0 or not math.isfinite(args.omega):
                raise UsageError(f"omega must be positive, got {args.omega}")
            step_op = time_evolution(config, args.omega, TWO_PI / args.omega)
        else:
            frame = build_generalized_frame(config, args.eta)
            step_op = generalized_number_shift(frame, "-")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    result = mat_apply(mat_power(step_op, args.steps), psi)
    comparison = equal_up_to_global_phase(psi, result, policy.tol_op)
    payload = {
        "dim": dim,
        "amp": _pairs(result.amp),
        "global_phase": comparison.phase if comparison.equal else None,
        "notes": notes,
    }
    _write_output(to_json(payload), args.out)
    return 0


def _dump_payload(args: argparse.Namespace, config: SpaceConfig) -> dict:
    name = args.object
    if name == "phase-states":
        frame = build_phase_frame(config)
        return {
            "kind": "phase-states",
            "dim": config.dim,
            "theta0": config.theta0,
            "states": [_pairs(frame.matrix[:, m]) for m in range(config.dim)],
        }
    if name == "phi":
        op = hermitian_phase_operator(config)
        return {
            "kind": "phi",
            "dim": config.dim,
            "theta0": config.theta0,
            "matrix": _matrix_json(op.entries),
        }
    if name == "exp-iphi":
        op = unitary_phase_operator(config)
        return {
            "kind": "exp-iphi",
            "dim": config.dim,
            "theta0": config.theta0,
            "matrix": _matrix_json(op.entries),
        }
    if name == "qN":
        op = number_shift_operator(config, "-")
        return {"kind": "qN", "dim": config.dim, "matrix": _matrix_json(op.entries)}
    if name in ("A", "Adag"):
        try:
            profile = resolve_profile(args.profile, config, args.eta)
            ladder = build_ladder_operators(config, args.eta, profile)
        except (ProfileError, OSError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        op = ladder.a if name == "A" else ladder.a_dag
        return {
            "kind": name,
            "dim": config.dim,
            "theta0": config.theta0,
            "eta": args.eta,
            "profile": [float(x) for x in profile.values],
            "matrix": _matrix_json(op.entries),
        }
    if name == "H":
        if args.omega <= 0 or not math.isfinite(args.omega):
            raise UsageError(f"omega must be positive, got {args.omega}")
        op = hamiltonian(config, args.omega)
        return {
            "kind": "H",
            "dim": config.dim,
            "omega": args.omega,
            "matrix": _matrix_json(op.entries),
        }
    if name == "commutators":
        phi = hermitian_phase_operator(config)
        direct = commutator(phi, number_operator(config))
        closed = commutator_closed_form(config)
        double = commutator_double_sum(config)
        deviation = np.abs(double.entries - closed.entries)
        return {
            "kind": "commutators",
            "dim": config.dim,
            "theta0": config.theta0,
            "direct": _matrix_json(direct.entries),
            "closed_form": _matrix_json(closed.entries),
            "double_sum": _matrix_json(double.entries),
            "max_abs_deviation_double_sum_vs_closed": max_abs(
                double.entries - closed.entries
            ),
            "elementwise_deviation": [
                [float(x) for x in row] for row in deviation
            ],
        }
    raise UsageError(f"unknown dump object {name!r}")


def cmd_dump(args: argparse.Namespace) -> int:
    config = _space_config(args.dim, args.theta0)
    _write_output(to_json(_dump_payload(args, config)), args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
