"""Command-line interface: evolve, quasienergy, scan, boundary, verify."""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import checkpoints, io, model_core, stability
from .errors import DivergenceError, ParityError, ResonanceError
from .integrator import IntegrationConfig, propagate
from .model_core import SystemParams, effective_couplings, quasienergies
from .state import StateVector

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESONANCE = 3
EXIT_DIVERGENCE = 4


class UsageError(ValueError):
    pass


# Defaults are applied only after --config merging, so argparse leaves every
# value as None when the flag is absent.
_DEFAULTS = {
    "nu": 1.0,
    "omega": 50.0,
    "steps_per_period": 512,
    "sample_stride": 1,
    "analytic": False,
    "stability_tol": stability.CLASSIFY_TOL,
    "init": 1,
    "suite": "figures",
}

# Flags that select one representation of the same quantity: if any member
# appears on the command line, none of the family is filled from --config.
_FLAG_FAMILIES = (("eps", "two_eps_over_omega"),
                  ("beta", "beta_l", "beta_r"),
                  ("init", "init_amps"))


def _add_param_flags(sub):
    sub.add_argument("--nu", type=float, help="bare tunneling rate (default 1)")
    sub.add_argument("--lambda", dest="lam", type=float,
                     help="spin-orbit mixing angle in units of pi")
    sub.add_argument("--Omega", type=float, help="Zeeman splitting")
    sub.add_argument("--omega", type=float, help="driving frequency (default 50)")
    drive = sub.add_mutually_exclusive_group()
    drive.add_argument("--eps", type=float, help="driving amplitude epsilon")
    drive.add_argument("--two-eps-over-omega", type=float,
                       help="driving expressed as the ratio 2*eps/omega")
    sub.add_argument("--beta", type=float, help="balanced gain-loss strength")
    sub.add_argument("--beta-l", type=float, help="left-well gain")
    sub.add_argument("--beta-r", type=float, help="right-well loss")


def _add_common(sub):
    sub.add_argument("--config", type=Path, help="JSON config file; flags override")
    sub.add_argument("--dump-config", type=Path,
                     help="write the effective config as JSON and exit")
    sub.add_argument("--output", "-o", type=Path, help="output file path")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="drivenwell",
        description="Floquet stability and exact dynamics of a driven "
                    "gain-loss spin-orbit double well")
    cmds = ap.add_subparsers(dest="command", required=True)

    ev = cmds.add_parser("evolve", help="integrate the driven model and write a CSV")
    _add_param_flags(ev)
    _add_common(ev)
    ev.add_argument("--init", type=int, choices=(1, 2, 3, 4),
                    help="initial basis state (default 1)")
    ev.add_argument("--init-amps", type=float, nargs=8, metavar="V",
                    help="initial amplitudes as re1 im1 ... re4 im4")
    ev.add_argument("--t-end", type=float)
    ev.add_argument("--steps-per-period", type=int)
    ev.add_argument("--sample-stride", type=int)
    ev.add_argument("--analytic", action=argparse.BooleanOptionalAction,
                    help="also write the Floquet-superposition trajectory")

    qe = cmds.add_parser("quasienergy", help="closed-form spectrum and eigenvectors")
    _add_param_flags(qe)
    _add_common(qe)
    qe.add_argument("--stability-tol", type=float)

    sc = cmds.add_parser("scan", help="2-D stability map")
    _add_param_flags(sc)
    _add_common(sc)
    sc.add_argument("--axis1", metavar="NAME:MIN:MAX:COUNT")
    sc.add_argument("--axis2", metavar="NAME:MIN:MAX:COUNT")
    sc.add_argument("--quantity", choices=stability.QUANTITIES)
    sc.add_argument("--threads", type=int,
                    help="worker threads (default: FJ_THREADS or machine parallelism)")
    sc.add_argument("--stability-tol", type=float)

    bd = cmds.add_parser("boundary", help="balanced stability boundary along one axis")
    _add_param_flags(bd)
    _add_common(bd)
    bd.add_argument("--axis", metavar="NAME:MIN:MAX:COUNT",
                    help="swept axis, lambda or two_eps_over_omega")

    vf = cmds.add_parser("verify", help="run the figure checkpoint suite")
    vf.add_argument("--suite", choices=("figures",))
    vf.add_argument("--out-dir", type=Path, required=True)
    return ap


def _parse_axis(spec: str) -> stability.ScanAxis:
    parts = spec.split(":")
    if len(parts) != 4:
        raise UsageError(f"axis must be NAME:MIN:MAX:COUNT, got {spec!r}")
    try:
        return stability.ScanAxis(parts[0], float(parts[1]), float(parts[2]),
                                  int(parts[3]))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset flags from --config JSON, then apply defaults.

    Explicit flags win; a flag from a family (drive, gain-loss, initial
    state) suppresses the whole family from the config so representations
    never mix.
    """
    if getattr(args, "config", None) is not None:
        stored = json.loads(Path(args.config).read_text(encoding="utf-8"))
        stored.pop("command", None)
        blocked = set()
        for family in _FLAG_FAMILIES:
            if any(getattr(args, k, None) is not None for k in family):
                blocked.update(family)
        for key, val in stored.items():
            if key in blocked or not hasattr(args, key):
                continue
            if getattr(args, key) is None:
                setattr(args, key, Path(val) if key == "output" else val)
    for key, val in _DEFAULTS.items():
        if key == "init" and getattr(args, "init_amps", None) is not None:
            continue
        if getattr(args, key, "absent") is None:
            setattr(args, key, val)
    return args


def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            flag = "--" + ("lambda" if name == "lam" else name.replace("_", "-"))
            raise UsageError(f"{flag} is required (flag or --config)")


def _config_dict(args: argparse.Namespace) -> dict:
    skip = {"config", "dump_config", "func"}
    out = {"command": args.command}
    for key, val in sorted(vars(args).items()):
        if key in skip or key == "command" or val is None:
            continue
        out[key] = str(val) if isinstance(val, Path) else val
    return out


def _params_from_args(args) -> SystemParams:
    _require(args, "lam", "Omega")
    if args.eps is None and args.two_eps_over_omega is None:
        raise UsageError("one of --eps / --two-eps-over-omega is required")
    if args.eps is not None and args.two_eps_over_omega is not None:
        raise UsageError("--eps and --two-eps-over-omega are mutually exclusive")
    eps = args.eps if args.eps is not None else 0.5 * args.two_eps_over_omega * args.omega
    if args.beta is not None:
        if args.beta_l is not None or args.beta_r is not None:
            raise UsageError("--beta cannot be mixed with --beta-l/--beta-r")
        beta_l = beta_r = args.beta
    elif args.beta_l is not None or args.beta_r is not None:
        if args.beta_l is None or args.beta_r is None:
            raise UsageError("unbalanced runs need both --beta-l and --beta-r")
        beta_l, beta_r = args.beta_l, args.beta_r
    else:
        beta_l = beta_r = 0.0
    try:
        return SystemParams(args.nu, args.lam, args.Omega, args.omega, eps,
                            beta_l, beta_r)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _initial_from_args(args) -> StateVector:
    if args.init_amps is not None:
        if args.init is not None:
            raise UsageError("--init and --init-amps are mutually exclusive")
        v = args.init_amps
        amps = np.array([complex(v[2 * k], v[2 * k + 1]) for k in range(4)])
        if not np.any(amps):
            raise UsageError("initial amplitudes must not all be zero")
        return StateVector(amps)
    return StateVector.basis(args.init if args.init is not None else 1)


def _require_output(args) -> Path:
    if args.output is None:
        raise UsageError("--output is required for this command")
    return args.output


def _cmd_evolve(args) -> int:
    _require(args, "t_end")
    params = _params_from_args(args)
    initial = _initial_from_args(args)
    out = _require_output(args)
    cfg = IntegrationConfig(t_end=args.t_end, steps_per_period=args.steps_per_period,
                            sample_stride=args.sample_stride)
    traj = propagate(params, initial, cfg)
    io.write_trajectory_csv(traj, out)
    if args.analytic:
        analytic = model_core.analytic_evolution(params, initial, traj.times)
        io.write_trajectory_csv(analytic, out.with_suffix(".analytic" + out.suffix))
    return EXIT_OK


def _cmd_quasienergy(args) -> int:
    params = _params_from_args(args)
    c = effective_couplings(params)
    modes = quasienergies(c, params.beta_l, params.beta_r)
    verdict = stability.classify([m.e for m in modes], args.stability_tol)
    report = io.quasienergy_report(params, c, modes, verdict)
    if args.output is not None:
        io.write_json(report, args.output)
    else:
        json.dump(io._round12(report), sys.stdout, indent=1)
        sys.stdout.write("\n")
    return EXIT_OK


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("FJ_THREADS", "")
    if env.strip():
        return int(env)
    return os.cpu_count() or 1


def _cmd_scan(args) -> int:
    _require(args, "axis1", "axis2", "quantity")
    params = _params_from_args(args)
    grid = stability.scan(params, _parse_axis(args.axis1), _parse_axis(args.axis2),
                          args.quantity, classify_tol=args.stability_tol,
                          threads=_threads(args))
    io.write_scan_json(grid, _require_output(args))
    return EXIT_OK


def _cmd_boundary(args) -> int:
    _require(args, "axis")
    params = _params_from_args(args)
    axis = _parse_axis(args.axis)
    if axis.name not in ("lambda", "two_eps_over_omega"):
        raise UsageError("boundary sweeps lambda or two_eps_over_omega")
    rows = []
    for v in axis.values:
        p = model_core._with_axis_value(params, axis.name, float(v))
        rows.append((float(v), stability.boundary_beta(effective_couplings(p))))
    io.write_boundary_csv(rows, _require_output(args))
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = checkpoints.run_figures_suite(args.out_dir)
    for item in report["items"]:
        print(f"{'PASS' if item['passed'] else 'FAIL'}  {item['name']}")
    print(f"report: {Path(args.out_dir) / 'report.json'}")
    return EXIT_OK if report["all_passed"] else 1


_HANDLERS = {
    "evolve": _cmd_evolve,
    "quasienergy": _cmd_quasienergy,
    "scan": _cmd_scan,
    "boundary": _cmd_boundary,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args = _merge_config(args)
        if getattr(args, "dump_config", None) is not None:
            io.write_json(_config_dict(args), args.dump_config)
            return EXIT_OK
        return _HANDLERS[args.command](args)
    except ResonanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESONANCE
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except (UsageError, ParityError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
