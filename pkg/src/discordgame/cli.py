"""Command-line entry point.

Exit codes: 0 success, 1 numerical failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import discord, game, hessian, optimize, qmath
from .game import StrategyProfile

ANGLE_DESTS = ("theta_a", "theta_ap", "theta_b", "theta_bp", "x")


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, int)):
        return str(int(v))
    # adding 0.0 turns -0.0 into 0.0
    return format(float(v) + 0.0, ".17g")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _add_common(p: argparse.ArgumentParser, default_format: str):
    p.add_argument("--format", choices=("csv", "json"), default=default_format)
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.add_argument("--config", metavar="PATH", help="JSON object of flag values; explicit flags win")


def _add_profile(p: argparse.ArgumentParser):
    for dest, flag in zip(ANGLE_DESTS, ("--theta-a", "--theta-ap", "--theta-b", "--theta-bp", "--x")):
        p.add_argument(flag, dest=dest, type=float, metavar="RAD")
    p.add_argument("--degrees", action="store_true", help="read angles and x in degrees")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discordgame", description="Discorded CHSH Bayesian game toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discord-curve", help="discord of rho(x) over x in [0, 2pi)")
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--theta-points", type=int, default=discord.SearchSettings.theta_points)
    p.add_argument("--phi-points", type=int, default=discord.SearchSettings.phi_points)
    p.add_argument("--xtol", type=float, default=discord.SearchSettings.xtol)
    _add_common(p, "csv")

    p = sub.add_parser("advantage-curve", help="payoff versus x at fixed angles")
    p.add_argument("--samples", type=int, default=256)
    optimum = dict(zip(ANGLE_DESTS[:4], optimize.OPTIMUM_ANGLES))
    for dest, flag in zip(ANGLE_DESTS[:4], ("--theta-a", "--theta-ap", "--theta-b", "--theta-bp")):
        p.add_argument(flag, dest=dest, type=float, default=optimum[dest], metavar="RAD")
    p.add_argument("--degrees", action="store_true")
    _add_common(p, "csv")

    p = sub.add_parser("optimize", help="run a named maximisation scenario")
    p.add_argument("--scenario", choices=optimize.SCENARIOS, required=False)
    p.add_argument("--angle-points", type=int, default=optimize.OptimizerSettings.angle_points)
    p.add_argument("--x-points", type=int, default=optimize.OptimizerSettings.x_points)
    p.add_argument("--top-k", type=int, default=optimize.OptimizerSettings.top_k)
    p.add_argument("--xtol", type=float, default=optimize.OptimizerSettings.xtol)
    _add_common(p, "json")

    p = sub.add_parser("payoff", help="f, its classical and quantum parts, and kappa")
    _add_profile(p)
    p.add_argument("--zero-tol", type=float, default=1e-6,
                   help="parts smaller than this count as zero for kappa")
    _add_common(p, "json")

    p = sub.add_parser("hessian", help="finite-difference Hessian and trace relation")
    _add_profile(p)
    p.add_argument("--include-x", action="store_true")
    p.add_argument("--step", type=float, default=hessian.DEFAULT_STEP)
    _add_common(p, "json")
    return parser


def _subparser(parser, command):
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[command]
    raise KeyError(command)


def _apply_config(sub: argparse.ArgumentParser, path: str):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    actions = {a.dest: a for a in sub._actions if a.dest not in ("help", "config")}
    defaults = {}
    for key, value in cfg.items():
        dest = key.lstrip("-").replace("-", "_")
        action = actions.get(dest)
        if action is None:
            raise UsageError(f"unknown config key {key!r}")
        if isinstance(action, argparse._StoreTrueAction):
            if not isinstance(value, bool):
                raise UsageError(f"config key {key!r} must be true or false")
        elif action.type is not None:
            if isinstance(value, bool) or not isinstance(value, (int, float, str)):
                raise UsageError(f"config key {key!r} has invalid value {value!r}")
            try:
                value = action.type(value)
            except (TypeError, ValueError):
                raise UsageError(f"config key {key!r} has invalid value {value!r}") from None
        if action.choices is not None and value not in action.choices:
            raise UsageError(f"config key {key!r}: {value!r} is not one of {list(action.choices)}")
        defaults[dest] = value
    sub.set_defaults(**defaults)


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        sub = _subparser(parser, args.command)
        try:
            _apply_config(sub, args.config)
        except UsageError as exc:
            sub.error(str(exc))
        args = parser.parse_args(argv)
    return parser, args


def _angles(args, dests):
    values = [getattr(args, d) for d in dests]
    missing = [d for d, v in zip(dests, values) if v is None]
    if missing:
        raise UsageError("missing coordinate(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))
    if args.degrees:
        values = [math.radians(v) for v in values]
    if not all(math.isfinite(v) for v in values):
        raise UsageError("coordinates must be finite")
    return values


def _positive(name, value):
    if not value > 0:
        raise UsageError(f"{name} must be positive")


def cmd_discord_curve(args):
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    _positive("--xtol", args.xtol)
    try:
        search = discord.SearchSettings(args.theta_points, args.phi_points, args.xtol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    table = discord.discord_curve(args.samples, search)
    if args.format == "csv":
        return _csv_text(("x", "discord_nats"), table)
    return _json_text([{"x": float(x), "discord_nats": float(d)} for x, d in table])


def cmd_advantage_curve(args):
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    angles = _angles(args, ANGLE_DESTS[:4])
    table = optimize.advantage_region(args.samples, angles)
    rows = [(x, f, int(flag)) for x, f, flag in table]
    if args.format == "csv":
        return _csv_text(("x", "f", "advantage"), rows)
    return _json_text([{"x": float(x), "f": float(f), "advantage": a} for x, f, a in rows])


def cmd_optimize(args):
    if args.scenario is None:
        raise UsageError("--scenario is required")
    _positive("--xtol", args.xtol)
    try:
        settings = optimize.OptimizerSettings(
            angle_points=args.angle_points, x_points=args.x_points, top_k=args.top_k, xtol=args.xtol
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = optimize.run_scenario(args.scenario, settings).to_json()
    if args.format == "csv":
        a = report["argmax"]
        return _csv_text(
            ("scenario", "value", *a.keys(), "evaluations"),
            [(report["scenario"], report["value"], *a.values(), report["evaluations"])],
        )
    return _json_text(report)


def cmd_payoff(args):
    _positive("--zero-tol", args.zero_tol)
    profile = StrategyProfile(*_angles(args, ANGLE_DESTS))
    d = game.decompose(profile, zero_tol=args.zero_tol)
    report = {
        "total": d.total,
        "classical": d.classical,
        "quantum": d.quantum,
        "kappa": game.kappa_to_json(d.kappa),
    }
    if args.format == "csv":
        return _csv_text(tuple(report), [tuple(report.values())])
    return _json_text(report)


def cmd_hessian(args):
    _positive("--step", args.step)
    profile = StrategyProfile(*_angles(args, ANGLE_DESTS))
    report = hessian.finite_difference_hessian(point=profile, step=args.step, include_x=args.include_x)
    if args.format == "csv":
        n = report.matrix.shape[0]
        return _csv_text([f"h{j}" for j in range(n)], report.matrix)
    return _json_text(report.to_json())


COMMANDS = {
    "discord-curve": cmd_discord_curve,
    "advantage-curve": cmd_advantage_curve,
    "optimize": cmd_optimize,
    "payoff": cmd_payoff,
    "hessian": cmd_hessian,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        parser, args = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (qmath.NotAStateError, FloatingPointError, RuntimeError, AssertionError) as exc:
        print(f"{parser.prog} {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
