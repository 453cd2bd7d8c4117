"""Command-line interface: compute measures for state files, run family sweeps, verify.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 unsupported dimension.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .correlation import closed_form_2xn, lower_bound
from .errors import UnsupportedDimensionError, ValidationError
from .families import sweep, sweep_to_csv
from .measures import (
    DiscordResult,
    optimize_affinity_discord,
    optimize_hs_discord,
    pure_discord,
    remedied_hs_discord,
)
from .states import BipartiteState, PureState, load_state, schmidt_spectrum
from .tolerances import DEFAULT_TOLERANCES, Tolerances
from .verification import CHECK_NAMES, run_checks

_PURITY_PURE_CUTOFF = 1e-8
_BOUND_MAX_DIM = 64  # skip the spectral bound for larger composite systems

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_UNSUPPORTED = 3


def _parse_overrides(pairs: list[str] | None) -> dict[str, float]:
    overrides: dict[str, float] = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ValidationError(f"tolerance override {pair!r} is not NAME=VALUE")
        key, _, value = pair.partition("=")
        try:
            overrides[key.strip()] = float(value)
        except ValueError as exc:
            raise ValidationError(f"tolerance override {pair!r}: {exc}") from exc
    return overrides


def _tolerances_from(pairs: list[str] | None) -> Tolerances:
    overrides = _parse_overrides(pairs)
    try:
        return DEFAULT_TOLERANCES.replace(**overrides)
    except TypeError as exc:
        raise ValidationError(str(exc)) from exc


def _complex_cells(matrix: np.ndarray) -> list:
    return [
        [{"re": float(z.real), "im": float(z.imag)} for z in row] for row in np.asarray(matrix)
    ]


def _measurement_payload(result: DiscordResult):
    if result.optimal_measurement is None:
        return None
    payload = {"vectors": _complex_cells(result.optimal_measurement.vectors)}
    if result.parameters is not None:
        payload["parameters"] = [float(x) for x in np.asarray(result.parameters).ravel()]
    return payload


def _as_pure(state: BipartiteState) -> PureState | None:
    if state.purity() < 1.0 - _PURITY_PURE_CUTOFF:
        return None
    w, v = np.linalg.eigh(state.rho)
    amps = v[:, -1]
    return PureState(state.dim_a, state.dim_b, amps / np.linalg.norm(amps))


def _resolve_method(measure: str, method: str, state: BipartiteState) -> str:
    if method != "auto":
        return method
    if measure == "hs":
        return "optimize"
    if _as_pure(state) is not None:
        return "closed-pure"
    if state.dim_a == 2:
        return "closed-2xn"
    return "optimize"


def _measure_entry(state, measure, method, strategy, budget, seed, tol) -> dict:
    resolved = _resolve_method(measure, method, state)
    if resolved == "closed":
        resolved = "closed-pure" if _as_pure(state) is not None else "closed-2xn"

    if resolved == "closed-pure":
        if measure == "hs":
            raise ValidationError("no closed path for the Hilbert-Schmidt measure")
        psi = _as_pure(state)
        if psi is None:
            raise ValidationError("state is not pure; closed-pure path unavailable")
        result = pure_discord(psi)
    elif resolved == "closed-2xn":
        if measure == "hs":
            raise ValidationError("no closed path for the Hilbert-Schmidt measure")
        if state.dim_a != 2:
            raise UnsupportedDimensionError("closed form requires dim_a = 2")
        result = closed_form_2xn(state, tol)
    elif resolved == "bound":
        if measure == "hs":
            raise ValidationError("the spectral bound applies to the affinity measure")
        raw = lower_bound(state, tol)
        result = DiscordResult(max(raw, 0.0), "bound", None, None, 0)
    elif resolved == "optimize":
        runner = {
            "affinity": optimize_affinity_discord,
            "hs": optimize_hs_discord,
            "remedied": remedied_hs_discord,
        }[measure]
        result = runner(state, strategy=strategy, budget=budget, seed=seed, tol=tol)
    else:
        raise ValidationError(f"unknown method {resolved!r}")

    entry = {
        "value": float(result.value),
        "method": result.method,
        "evaluations": int(result.evaluations),
        "optimal_measurement": _measurement_payload(result),
    }
    if measure in ("affinity", "remedied") and state.dim <= _BOUND_MAX_DIM:
        raw = lower_bound(state, tol)
        entry["bound"] = float(raw)
        entry["bound_clamped"] = max(0.0, float(raw))
    return entry


def cmd_compute(args) -> int:
    tol = _tolerances_from(args.tol_key)
    state = load_state(args.state, tol)
    measures = ["affinity", "hs", "remedied"] if args.measure == "all" else [args.measure]
    entries = {
        m: _measure_entry(state, m, args.method, args.strategy, args.budget, args.seed, tol)
        for m in measures
    }
    psi = _as_pure(state)
    diagnostics = {
        "purity": state.purity(),
        "marginal_spectrum_a": [float(x) for x in np.linalg.eigvalsh(state.marginal("a"))],
        "marginal_spectrum_b": [float(x) for x in np.linalg.eigvalsh(state.marginal("b"))],
        "schmidt_spectrum": (
            None if psi is None else [float(x) for x in schmidt_spectrum(psi)]
        ),
    }
    report = {
        "command": "compute",
        "input": args.state,
        "dim_a": state.dim_a,
        "dim_b": state.dim_b,
        "seed": args.seed,
        "measures": entries,
        "diagnostics": diagnostics,
    }
    _emit(json.dumps(report, sort_keys=True, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.steps < 1:
        raise ValidationError(f"--steps must be positive, got {args.steps}")
    if args.start > args.stop:
        raise ValidationError(f"--from {args.start} exceeds --to {args.stop}")
    if args.family in ("werner", "isotropic") and args.dim is None:
        raise ValidationError(f"--family {args.family} requires --dim")
    params = np.linspace(args.start, args.stop, args.steps)
    measures = ("affinity", "hs") if args.measure == "all" else (args.measure,)
    rows = sweep(
        args.family,
        params,
        measures=measures,
        dim=args.dim,
        strategy=args.strategy,
        budget=args.budget,
        seed=args.seed,
        tol=_tolerances_from(args.tol_key),
    )
    if args.format == "json":
        payload = [
            {
                "family": r.family,
                "param": float(r.param),
                "measure": r.measure,
                "analytic": r.analytic,
                "optimized": r.optimized,
                "gap": r.gap,
            }
            for r in rows
        ]
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    else:
        _emit(sweep_to_csv(rows), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = args.checks.split(",") if args.checks else None
    try:
        results = run_checks(
            seed=args.seed,
            tolerance_overrides=_parse_overrides(args.tol_key),
            names=names,
        )
    except KeyError as exc:
        raise ValidationError(str(exc)) from exc
    lines = [json.dumps(res.to_dict(), sort_keys=True) for res in results]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if all(res.passed for res in results) else EXIT_VERIFY_FAILED


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affinity-discord",
        description="Affinity-based geometric discord of bipartite quantum states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed for all randomness")
    common.add_argument("--budget", type=int, default=None, help="optimizer evaluation budget")
    common.add_argument(
        "--strategy",
        choices=["grid", "multistart-local", "hybrid"],
        default="hybrid",
        help="measurement-optimization strategy",
    )
    common.add_argument("--out", default=None, help="write output to this path")
    common.add_argument(
        "--tol-key",
        action="append",
        metavar="NAME=VALUE",
        help="override a named tolerance (repeatable)",
    )

    p_compute = sub.add_parser("compute", parents=[common], help="compute measures for a state file")
    p_compute.add_argument("--state", required=True, help="path to a JSON state file")
    p_compute.add_argument(
        "--measure", choices=["affinity", "hs", "remedied", "all"], default="affinity"
    )
    p_compute.add_argument(
        "--method", choices=["auto", "closed", "bound", "optimize"], default="auto"
    )
    p_compute.add_argument("--format", choices=["json"], default="json")
    p_compute.set_defaults(fn=cmd_compute)

    p_sweep = sub.add_parser("sweep", parents=[common], help="tabulate a family over a parameter grid")
    p_sweep.add_argument("--family", choices=["werner2", "werner", "isotropic"], required=True)
    p_sweep.add_argument("--dim", type=int, default=None, help="subsystem dimension m")
    p_sweep.add_argument("--from", dest="start", type=float, required=True)
    p_sweep.add_argument("--to", dest="stop", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--measure", choices=["affinity", "hs", "all"], default="all")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.set_defaults(fn=cmd_sweep)

    p_verify = sub.add_parser("verify", parents=[common], help="run the verification checks")
    p_verify.add_argument(
        "--checks",
        default=None,
        help=f"comma-separated subset of: {', '.join(CHECK_NAMES)}",
    )
    p_verify.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as exc:
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
        return EXIT_INVALID_INPUT
    except UnsupportedDimensionError as exc:
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
        return EXIT_UNSUPPORTED
    except FileNotFoundError as exc:
        sys.stderr.write(
            json.dumps({"error": "FileNotFound", "message": str(exc)}) + "\n"
        )
        return EXIT_INVALID_INPUT


def entry_point() -> None:
    sys.exit(main())
