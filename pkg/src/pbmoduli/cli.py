"""Command-line front end: ``pbmoduli {pi,curve,invert,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Sequence

from .errors import ModuliError
from .moduli import OnCurve, curve_points, invert_bad, invert_good, locate, pi_map
from .serialize import (
    complex_from_json,
    complex_to_json,
    curve_csv,
    parabolic_from_json,
    parabolic_to_json,
    parse_complex,
    proj_from_json,
    triple_from_json,
    triple_to_json,
)
from .verify import SUITES, RunConfig, run_suite

__all__ = ["main", "build_parser", "load_config"]


class UsageError(Exception):
    pass


def _read_json(text: str | None) -> Any:
    """JSON from a literal, a file path, ``-`` or (when omitted) stdin."""
    if text is None or text == "-":
        text = sys.stdin.read()
    elif not text.lstrip().startswith(("{", "[", '"')) and Path(text).is_file():
        text = Path(text).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON input: {exc}") from None


def _parse_points(s: str) -> tuple[complex, complex, complex]:
    pts = [parse_complex(x) for x in s.split(",") if x.strip()]
    if len(pts) != 3:
        raise UsageError("--points needs three comma-separated complex numbers")
    return tuple(pts)


def load_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the JSON config file, then explicit flags."""
    run = RunConfig()
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(data) - {"tau", "points", "tol", "trunc_eps", "seed", "samples"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        if "tau" in data:
            run = replace(run, tau=complex_from_json(data["tau"]))
        if "points" in data:
            pts = tuple(complex_from_json(p) for p in data["points"])
            if len(pts) != 3:
                raise UsageError("config 'points' must list three points")
            run = replace(run, points=pts)
        for key, cast in (("tol", float), ("trunc_eps", float), ("seed", int), ("samples", int)):
            if key in data:
                run = replace(run, **{key: cast(data[key])})
    if args.tau is not None:
        run = replace(run, tau=parse_complex(args.tau))
    if args.points is not None:
        run = replace(run, points=_parse_points(args.points))
    for key in ("tol", "trunc_eps", "seed", "samples"):
        v = getattr(args, key)
        if v is not None:
            run = replace(run, **{key: v})
    if run.samples < 1:
        raise UsageError("--samples must be positive")
    return run


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_pi(args, run: RunConfig) -> tuple[str, int]:
    cfg = run.moduli_config()
    pb = parabolic_from_json(_read_json(args.bundle), cfg.lat, cfg.points)
    return _dump(triple_to_json(pi_map(cfg, pb))), 0


def cmd_curve(args, run: RunConfig) -> tuple[str, int]:
    if args.resolution < 4:
        raise UsageError("--resolution must be at least 4")
    cfg = run.moduli_config()
    return curve_csv(curve_points(cfg, args.resolution)), 0


def cmd_invert(args, run: RunConfig) -> tuple[str, int]:
    cfg = run.moduli_config()
    t = triple_from_json(_read_json(args.triple))
    tag = locate(cfg, t)
    if isinstance(tag, OnCurve):
        out = {
            "locus": "curve",
            "lambda": complex_to_json(tag.lam.z),
            "fiber": "CP^1 of bad-locus elements",
        }
        if args.m is not None:
            m = proj_from_json(_read_json(args.m))
            out["bundle"] = parabolic_to_json(invert_bad(cfg, tag.lam, m))
        return _dump(out), 0
    return _dump({"locus": "good", "bundle": parabolic_to_json(invert_good(cfg, t))}), 0


def cmd_verify(args, run: RunConfig) -> tuple[str, int]:
    report = run_suite(args.suite, run)
    ok = all(c["pass"] for c in report["checks"])
    return _dump(report), 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with tau, points, tol, trunc_eps, seed, samples")
    common.add_argument("--tau", help="modulus, e.g. 0.3+1.1i (default 0.3+1.1i)")
    common.add_argument("--points", help="p1,p2,p3 as comma-separated complex numbers")
    common.add_argument("--tol", type=float, help="comparison tolerance (default 1e-9)")
    common.add_argument("--trunc-eps", dest="trunc_eps", type=float,
                        help="series truncation threshold (default 1e-14)")
    common.add_argument("--seed", type=int, help="random seed (default 42)")
    common.add_argument("--samples", type=int, help="samples per randomized check (default 200)")
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="pbmoduli", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pi", parents=[common], help="evaluate pi on a parabolic bundle")
    p.add_argument("--bundle", help="bundle JSON, a path to it, or '-' for stdin (default stdin)")
    p.set_defaults(func=cmd_pi)

    p = sub.add_parser("curve", parents=[common], help="emit the embedded curve as CSV")
    p.add_argument("--resolution", type=int, default=16)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("invert", parents=[common], help="invert pi at a triple")
    p.add_argument("--triple", help="triple JSON, a path to it, or '-' for stdin (default stdin)")
    p.add_argument("--m", help="ProjPoint JSON selecting a point of the fiber over a curve triple")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    p.add_argument("--suite", choices=sorted(SUITES), default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        run = load_config(args)
        text, code = args.func(args, run)
    except (UsageError, ModuliError, ValueError, KeyError, TypeError) as exc:
        name = type(exc).__name__ if isinstance(exc, ModuliError) else "error"
        print(f"pbmoduli: {name}: {exc}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
