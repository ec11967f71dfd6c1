"""Command-line interface.

Exit codes: 0 success / decided, 1 usage or parse error, 2 out of scope,
3 numerical divergence.  Exact numbers are always printed as strings.

Negative rational arguments such as ``-1/2`` look like options to argparse;
put ``--`` before the positionals (``chen-lorenz m0 -- 2 3 -1/2``) or write
range options as ``--c=-2:2:1``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .dynamics import (
    DivergenceError,
    IntegratorConfig,
    LyapunovConfig,
    integrate,
    largest_lyapunov,
    write_trajectory_csv,
)
from .equiv import Verdict, decide, invariants_from_chen, m0_with_flags, quintic_factor, verify_factorization
from .exact import format_rational, parse_rational
from .systems import ChenParams, MissingEquilibrium, SystemKind, charpoly_at, equilibria, existence_product, make_params

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_OUT_OF_SCOPE = 2
EXIT_DIVERGED = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


@dataclass(frozen=True)
class AxisRange:
    lo: Fraction
    hi: Fraction
    step: Fraction

    def values(self) -> List[Fraction]:
        out = []
        v = self.lo
        while v <= self.hi:
            out.append(v)
            v += self.step
        return out


def parse_range(text: str) -> AxisRange:
    """``MIN:MAX:STEP`` (or a single value) with exact rational components."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = parse_rational(parts[0])
            return AxisRange(v, v, Fraction(1))
        if len(parts) != 3:
            raise ValueError("expected MIN:MAX:STEP")
        lo, hi, step = (parse_rational(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad range {text!r}: {exc}") from exc
    if step <= 0:
        raise argparse.ArgumentTypeError(f"bad range {text!r}: step must be positive")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"bad range {text!r}: min > max")
    return AxisRange(lo, hi, step)


@dataclass(frozen=True)
class ScanSpec:
    a: AxisRange
    b: AxisRange
    c: AxisRange
    exact_values: bool = False
    surfaces: bool = True

    def points(self) -> List[Tuple[Fraction, Fraction, Fraction]]:
        return [(a, b, c) for a in self.a.values() for b in self.b.values() for c in self.c.values()]

    def header(self) -> List[str]:
        cols = ["a", "b", "c", "m0_sign"]
        if self.surfaces:
            cols += ["on_b0", "on_a2c", "on_c1"]
        cols.append("has3eq")
        if self.surfaces:
            cols.append("on_quintic")
        if self.exact_values:
            cols.append("m0")
        return cols


def scan_row(spec: ScanSpec, point) -> List[str]:
    a, b, c = point
    p = ChenParams(a, b, c)
    m0, _ = m0_with_flags(invariants_from_chen(p))
    sign = (m0 > 0) - (m0 < 0)
    row = [format_rational(a), format_rational(b), format_rational(c), str(sign)]
    if spec.surfaces:
        row += [str(int(b == 0)), str(int(a == 2 * c)), str(int(c == -1))]
    row.append(str(int(existence_product(p) > 0)))
    if spec.surfaces:
        row.append(str(int(quintic_factor().evaluate(a, b, c) == 0)))
    if spec.exact_values:
        row.append(format_rational(m0))
    return row


def run_scan(spec: ScanSpec, out, threads: int = 1) -> int:
    """Write the scan CSV in lexicographic (a, b, c) order; returns the row count."""
    points = spec.points()
    quintic_factor()  # build the shared cache before fanning out
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda pt: scan_row(spec, pt), points))
    else:
        rows = [scan_row(spec, pt) for pt in points]
    w = csv.writer(out, lineterminator="\n")
    w.writerow(spec.header())
    w.writerows(rows)
    return len(rows)


# output helpers


def _emit_json(obj, args) -> None:
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    _emit_text(text, args)


def _emit_text(text: str, args) -> None:
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _params(args):
    return make_params(args.system, args.a, args.b, args.c)


# subcommands


def cmd_decide(args) -> int:
    cert = decide(ChenParams(args.a, args.b, args.c))
    _emit_json(cert.to_json(), args)
    return EXIT_OUT_OF_SCOPE if cert.verdict is Verdict.OUT_OF_SCOPE else EXIT_OK


def cmd_m0(args) -> int:
    p = ChenParams(args.a, args.b, args.c)
    t = invariants_from_chen(p)
    m0, flags = m0_with_flags(t)
    _emit_json(
        {
            "chen": p.to_json(),
            "invariants": t.to_json(),
            "m0": format_rational(m0),
            "m0_approx": float(m0),
            "degenerate_flags": flags,
        },
        args,
    )
    return EXIT_OK


def cmd_equilibria(args) -> int:
    _emit_json(equilibria(_params(args)).to_json(), args)
    return EXIT_OK


def cmd_charpoly(args) -> int:
    p = _params(args)
    labels = [args.at] if args.at else equilibria(p).labels
    try:
        polys = {label: charpoly_at(p, label) for label in labels}
    except MissingEquilibrium as exc:
        raise UsageError(str(exc)) from exc
    if args.at:
        out = {"system": p.kind.value, "params": p.to_json(), "at": args.at}
        out.update(polys[args.at].to_json())
        out["approx"] = [float(v) for v in polys[args.at].astuple()]
    else:
        out = {
            "system": p.kind.value,
            "params": p.to_json(),
            "charpolys": {k: v.to_json() for k, v in polys.items()},
        }
    _emit_json(out, args)
    return EXIT_OK


def cmd_verify_factorization(args) -> int:
    report = verify_factorization(samples=args.samples, seed=args.seed)
    _emit_json(report.to_json(), args)
    return EXIT_OK


def cmd_scan(args) -> int:
    spec = ScanSpec(args.a, args.b, args.c, exact_values=args.exact_values, surfaces=not args.no_surfaces)
    buf = io.StringIO()
    run_scan(spec, buf, threads=max(1, args.threads))
    _emit_text(buf.getvalue(), args)
    return EXIT_OK


def _x0(args):
    return tuple(float(v) for v in args.x0)


def cmd_simulate(args) -> int:
    try:
        cfg = IntegratorConfig(dt=args.dt, t_end=args.t, initial_state=_x0(args), bound=args.bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    traj = integrate(_params(args), cfg)
    buf = io.StringIO()
    write_trajectory_csv(traj, buf)
    _emit_text(buf.getvalue(), args)
    if traj.diverged:
        print(f"divergence: {traj.error}", file=sys.stderr)
        return EXIT_DIVERGED
    return EXIT_OK


def cmd_lyapunov(args) -> int:
    p = _params(args)
    try:
        cfg = LyapunovConfig(
            dt=args.dt,
            t_end=args.t,
            transient=args.transient,
            renormalization_interval=args.renorm,
            initial_state=_x0(args),
            bound=args.bound,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        est = largest_lyapunov(p, cfg)
    except DivergenceError as exc:
        _emit_json({"system": p.kind.value, "params": p.to_json(), "error": str(exc)}, args)
        return EXIT_DIVERGED
    out = {"system": p.kind.value, "params": p.to_json()}
    out.update(est.to_json())
    out["config"].update({"t_end": cfg.t_end, "initial_state": list(cfg.initial_state), "method": "rk4"})
    _emit_json(out, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=True,
                        help="JSON output (the default; accepted for explicitness)")
    common.add_argument("--output", "-o", metavar="PATH", help="write to PATH instead of stdout")

    parser = _Parser(prog="chen-lorenz", description=__doc__.split("\n")[0] if __doc__ else None)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def chen_args(p):
        p.add_argument("a", type=_rational, help="a' (p/q or decimal)")
        p.add_argument("b", type=_rational, help="b'")
        p.add_argument("c", type=_rational, help="c'")

    def system_args(p):
        p.add_argument("system", choices=[k.value for k in SystemKind])
        chen_args(p)

    p = sub.add_parser("decide", parents=[common], help="non-equivalence certificate for a Chen system")
    chen_args(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("m0", parents=[common], help="exact resultant obstruction M0")
    chen_args(p)
    p.set_defaults(func=cmd_m0)

    p = sub.add_parser("equilibria", parents=[common], help="exact equilibria")
    system_args(p)
    p.set_defaults(func=cmd_equilibria)

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomials at equilibria")
    system_args(p)
    p.add_argument("--at", metavar="LABEL", help="P1..P3 or Q1..Q3 (default: all)")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("verify-factorization", parents=[common], help="peel the surface factors off symbolic M0")
    p.add_argument("--samples", type=int, default=20, help="random surface points checked per factor")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_factorization)

    p = sub.add_parser("scan", parents=[common], help="exact M0 sign over a rational grid (CSV)")
    p.add_argument("--a", type=parse_range, required=True, metavar="MIN:MAX:STEP")
    p.add_argument("--b", type=parse_range, required=True, metavar="MIN:MAX:STEP")
    p.add_argument("--c", type=parse_range, required=True, metavar="MIN:MAX:STEP")
    p.add_argument("--exact-values", action="store_true", help="append the exact m0 column")
    p.add_argument("--no-surfaces", action="store_true", help="omit surface classification columns")
    p.add_argument("--threads", type=int, default=1, metavar="N")
    p.set_defaults(func=cmd_scan)

    def numeric_args(p, t_default, dt_default):
        p.add_argument("--t", type=float, default=t_default, help="end time")
        p.add_argument("--dt", type=float, default=dt_default, help="RK4 step")
        p.add_argument("--x0", type=float, nargs=3, default=[1.0, 1.0, 1.0], metavar=("X", "Y", "Z"))
        p.add_argument("--bound", type=float, default=1e12, help="divergence bound")

    p = sub.add_parser("simulate", parents=[common], help="RK4 trajectory as CSV")
    system_args(p)
    numeric_args(p, 50.0, 1e-3)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("lyapunov", parents=[common], help="largest Lyapunov exponent (heuristic)")
    system_args(p)
    defaults = LyapunovConfig()
    numeric_args(p, defaults.t_end, defaults.dt)
    p.add_argument("--transient", type=float, default=defaults.transient)
    p.add_argument("--renorm", type=float, default=defaults.renormalization_interval,
                   help="renormalization interval")
    p.set_defaults(func=cmd_lyapunov)
    return parser


_RANGE_FLAGS = ("--a", "--b", "--c")
_NEGATIVE_VALUE = re.compile(r"^-[\d.]")


def _attach_negative_ranges(argv: Sequence[str]) -> List[str]:
    """Rewrite ``--c -2:2:1`` as ``--c=-2:2:1``; argparse would read the value as a flag."""
    out: List[str] = []
    tokens = list(argv)
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok in _RANGE_FLAGS and i + 1 < len(tokens) and _NEGATIVE_VALUE.match(tokens[i + 1]):
            out.append(f"{tok}={tokens[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(_attach_negative_ranges(argv))
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"chen-lorenz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
