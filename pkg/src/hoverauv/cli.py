"""Command-line entry points.

Exit codes: 0 success, 1 usage error, 2 configuration error, 3 runtime error.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import config as cfgmod
from .allocation import allocate, vehicle_problem
from .coefficients import UNITS, CalibrationFactors, apply_calibration
from .environment import Environment
from .errors import ConfigError, HoverAUVError, MissionTimeout
from .hydro import estimate_all
from .logs import CommandLog, TrajectoryLog, write_metrics
from .mission import CameraFootprint, overlap_report
from .reference_data import ESTIMATED
from .simulator import build_vehicle, compare, initial_state, replay, run_mission

EXIT_OK, EXIT_USAGE, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _floats(text: str, n: int, what: str) -> np.ndarray:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what} must be {n} comma-separated numbers") from None
    if len(vals) != n:
        raise argparse.ArgumentTypeError(f"{what} must be {n} comma-separated numbers")
    return np.array(vals)


def _out_dir(path) -> Path:
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p


def cmd_estimate(args) -> int:
    cfg = cfgmod.load(args.vehicle)
    coeffs = estimate_all(cfg.vehicle.geometry, cfg.environment.rho, cfg.vehicle.hydro)
    if args.calibrate:
        d = cfgmod.read_json(args.calibrate)
        coeffs = apply_calibration(coeffs, CalibrationFactors(d.get("factors", d)))
    if args.json:
        print(json.dumps({"provenance": dict(coeffs.provenance), "values": coeffs.as_dict()}, indent=2))
    else:
        tags = ",".join(sorted(set(coeffs.provenance.values())))
        print(f"{'name':<8} {'value':>12} {'unit':<14} {'reference':>11}  provenance: {tags}")
        for name, value in coeffs.as_dict().items():
            ref = ESTIMATED.get(name)
            ref_s = f"{ref:11.4g}" if ref is not None else f"{'-':>11}"
            print(f"{name:<8} {value:12.5g} {UNITS[name]:<14} {ref_s}")
    if args.out:
        Path(args.out).write_text(json.dumps(coeffs.as_dict(), indent=2) + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_plan(args) -> int:
    cfg = cfgmod.load(args.mission)
    plan = cfg.mission.plan()
    report = overlap_report(CameraFootprint(), plan)
    text = json.dumps({"plan": plan.to_dict(), "overlap": report}, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    print(text)
    return EXIT_OK


def _with_current(cfg, current):
    if current is None:
        return cfg.environment
    e = cfg.environment
    return Environment(tuple(current), e.rho, e.gravity, e.seabed)


def cmd_simulate(args) -> int:
    cfg = cfgmod.load(args.vehicle, args.mission)
    env = _with_current(cfg, args.current)
    vehicle = build_vehicle(cfg.vehicle, env)
    out = _out_dir(args.out)
    status = EXIT_OK
    try:
        result = run_mission(cfg.mission.plan(), vehicle, cfg.gains, args.controller, cfg.simulation)
    except MissionTimeout as exc:
        print(f"error: {exc}", file=sys.stderr)
        result, status = exc.result, EXIT_RUNTIME
    result.log.write_csv(out / "trajectory.csv")
    if result.log.commands is not None:
        result.log.commands.write_csv(out / "commands.csv")
    write_metrics(out / "metrics.json", result.metrics)
    run = {"controller": args.controller, "seed": args.seed, "current": list(env.current),
           "completed": result.completed, "config": cfgmod.to_dict(cfg)}
    (out / "run.json").write_text(json.dumps(run, indent=2) + "\n", encoding="utf-8")
    print(json.dumps(result.metrics, indent=2))
    return status


def cmd_replay(args) -> int:
    cfg = cfgmod.load(args.vehicle)
    commands = CommandLog.read_csv(args.rpm)
    vehicle = build_vehicle(cfg.vehicle, _with_current(cfg, args.current))
    measured = TrajectoryLog.read_csv(args.compare) if args.compare else None
    if args.initial is None and measured is not None and len(measured):
        state = initial_state(eta=measured.eta[0], nu=measured.nu[0])
    else:
        state = initial_state(eta=args.initial)
    log = replay(commands, vehicle, state, cfg.simulation.dt, cfg.simulation.substeps, cfg.simulation.kernel)
    out = _out_dir(args.out)
    log.write_csv(out / "replay.csv")
    if args.compare:
        report = compare(log, measured)
        (out / "compare.json").write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")
        print(report.to_text())
    else:
        print(f"{len(log)} samples written to {out / 'replay.csv'}")
    return EXIT_OK


def cmd_allocate(args) -> int:
    cfg = cfgmod.load(args.vehicle)
    vehicle = build_vehicle(cfg.vehicle, cfg.environment)
    disabled = (3, 4) if args.controller == "original" else ()
    problem = vehicle_problem(args.tau, vehicle.B, cfg.vehicle.thrusters, args.speed, cfg.vehicle.weights,
                              cfg.vehicle.epsilon, cfg.environment.rho, disabled)
    result = allocate(problem, trace=True)
    np.set_printoptions(precision=5, suppress=True, linewidth=120)
    print(f"W = {problem.W}")
    print(f"f_min = {problem.f_min}\nf_max = {problem.f_max}")
    for i, s in enumerate(result.trace):
        print(f"-- pass {i}\nB =\n{s['B']}\nc = {s['c']}\nf = {s['f']}")
    print(f"f_th = {result.f_th}")
    print(f"saturated = {result.saturated.astype(int)}")
    print(f"achieved (X, Y, Z, N) = {problem.B0 @ result.f_th}")
    print(f"residual = {result.residual:.6g}  iterations = {result.iterations}  infeasible = {result.infeasible}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hoverauv", description="Hovering AUV modelling, allocation and survey simulation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("estimate-coeffs", help="estimate hydrodynamic coefficients from geometry")
    s.add_argument("vehicle")
    s.add_argument("--calibrate", metavar="FACTORS")
    s.add_argument("--json", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_estimate)

    s = sub.add_parser("plan", help="plan a lawnmower survey")
    s.add_argument("mission")
    s.add_argument("--out")
    s.set_defaults(func=cmd_plan)

    s = sub.add_parser("simulate", help="closed-loop survey simulation")
    s.add_argument("vehicle")
    s.add_argument("mission")
    s.add_argument("--controller", choices=("original", "modified"), default="modified")
    s.add_argument("--current", type=lambda t: _floats(t, 3, "--current"), metavar="N,E,D")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default=".")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("replay", help="open-loop replay of a thruster command log")
    s.add_argument("vehicle")
    s.add_argument("rpm")
    s.add_argument("--compare", metavar="MEASURED")
    s.add_argument("--current", type=lambda t: _floats(t, 3, "--current"), metavar="N,E,D")
    s.add_argument("--initial", type=lambda t: _floats(t, 6, "--initial"), metavar="x,y,z,phi,theta,psi",
                   help="initial pose; defaults to the first row of --compare, else the origin")
    s.add_argument("--out", default=".")
    s.set_defaults(func=cmd_replay)

    s = sub.add_parser("allocate", help="allocate a demand and print the redistribution trace")
    s.add_argument("vehicle")
    s.add_argument("--tau", type=lambda t: _floats(t, 4, "--tau"), required=True, metavar="X,Y,Z,N")
    s.add_argument("--speed", type=float, default=0.0)
    s.add_argument("--controller", choices=("original", "modified"), default="modified")
    s.set_defaults(func=cmd_allocate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (HoverAUVError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
