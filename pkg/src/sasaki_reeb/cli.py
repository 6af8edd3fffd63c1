"""Command-line front end.

    sasaki-reeb solve pp:1/1 [--tol 1e-12] [--json] [--out result.json]
    sasaki-reeb futaki fermat:3
    sasaki-reeb profile gr:4,2,1 --rho -20:20 --steps 2001 --quad-tol 1e-10 --out prof.csv
    sasaki-reeb catalog [--json] [-v]

Spec sources are JSON files ({"label": ..., "entries": [{"mu": "p/q",
"multiplicity": m}, ...]}) or catalog names.  Exit codes: 0 ok, 2 bad input,
3 solver failure, 4 quadrature failure, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .catalog import ALIASES, CATALOG, load_spec
from .errors import InvalidSpec, PositivityViolation, QuadratureFailure, SolverFailure
from .profile import ProfileTolerances, build_profile, verify_profile
from .reeb import DEFAULT_TOLERANCE, futaki_obstruction, solve_reeb_parameter

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3
EXIT_QUADRATURE = 4
EXIT_VERIFICATION = 5


def dump_json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _tolerance(text: str) -> Fraction:
    try:
        tol = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if tol <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return tol


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _rho_range(text: str) -> tuple:
    lo, sep, hi = text.partition(":")
    try:
        if not sep:
            raise ValueError
        lo_f, hi_f = float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if not lo_f < hi_f:
        raise argparse.ArgumentTypeError("rho range needs lo < hi")
    return lo_f, hi_f


def _steps(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError("steps must be at least 2")
    return n


def _write(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def cmd_solve(args, out) -> int:
    spec = load_spec(args.spec)
    sol = solve_reeb_parameter(spec, args.tol)
    payload = dump_json(sol.to_json_dict())
    if args.out:
        _write(args.out, payload)
    if args.json:
        out.write(payload)
    else:
        enc = sol.a0_enclosure
        out.write(f"spec: {spec.label or spec.to_json()}\n")
        out.write(f"a0 = {sol.a0_float!r}\n")
        out.write(f"enclosure: [{enc.lo}, {enc.hi}]\n")
        exact = "" if sol.a0_exact is None else f" (a0 = {sol.a0_exact} exactly)"
        out.write(f"regularity: {sol.regularity.name}{exact}\n")
        out.write(f"|F(a0)| = {sol.F_residual:.3e}\n")
        out.write(f"futaki obstruction at a=0: {sol.futaki_at_zero}\n")
        out.write(f"P(a) = {sol.P.format('a')}\n")
    return EXIT_OK


def cmd_futaki(args, out) -> int:
    spec = load_spec(args.spec)
    value = futaki_obstruction(spec)
    ke = "yes" if value == 0 else "no"
    if args.json:
        out.write(dump_json({"label": spec.label, "futaki": str(value),
                             "futaki_float": float(value), "ke_exists": value == 0}))
    else:
        out.write(f"{value}\n")
        out.write(f"KE exists on M_W^L: {ke}\n")
    return EXIT_OK


def cmd_profile(args, out) -> int:
    spec = load_spec(args.spec)
    sol = solve_reeb_parameter(spec, args.tol)
    rho_min, rho_max = args.rho
    table = build_profile(spec, sol, rho_min, rho_max, args.steps, args.quad_tol)
    report = verify_profile(table, sol, ProfileTolerances())
    report_text = dump_json(report.to_json_dict())
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            table.to_csv(fh)
        report_path = args.report or str(Path(args.out).with_suffix(".report.json"))
        _write(report_path, report_text)
    else:
        table.to_csv(out)
        if args.report:
            _write(args.report, report_text)
    summary = sys.stderr if not args.out else out
    for c in report.checks:
        summary.write(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.measured}\n")
    summary.write(f"overall: {'pass' if report.overall else 'fail'}\n")
    return EXIT_OK if report.overall else EXIT_VERIFICATION


def cmd_catalog(args, out) -> int:
    if args.json:
        out.write(dump_json({"families": CATALOG, "aliases": ALIASES}))
        return EXIT_OK
    for fam in CATALOG:
        out.write(f"{fam['grammar']:<26} {fam['description']}\n")
        out.write(f"{'':<26} bounds: {fam['bounds']}\n")
        if args.verbose:
            out.write(f"{'':<26} eigenvalues: {fam['eigenvalues']}\n")
            out.write(f"{'':<26} {fam['notes']}\n")
    for alias, target in ALIASES.items():
        out.write(f"alias {alias} = {target}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sasaki-reeb",
        description="Reeb parameter a_0 and transverse Kaehler-Einstein profiles.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="find a_0, P(a) and the regularity class")
    s.add_argument("spec", help="spec JSON path or catalog name (pp:1/1, gr:4,2,1, fermat:3, dp1)")
    s.add_argument("--tol", type=_tolerance, default=DEFAULT_TOLERANCE,
                   help="width of the exact a_0 enclosure (default 1e-12)")
    s.add_argument("--json", action="store_true", help="print the JSON result")
    s.add_argument("--out", help="write the JSON result to PATH")
    s.set_defaults(func=cmd_solve)

    f = sub.add_parser("futaki", help="exact Futaki obstruction of M_W^L")
    f.add_argument("spec")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_futaki)

    pr = sub.add_parser("profile", help="tabulate x(rho), u(rho) at a_0 and verify them")
    pr.add_argument("spec")
    pr.add_argument("--rho", type=_rho_range, default=(-20.0, 20.0), help="lo:hi (default -20:20)")
    pr.add_argument("--steps", type=_steps, default=2001)
    pr.add_argument("--quad-tol", type=_positive_float, default=1e-10, dest="quad_tol")
    pr.add_argument("--tol", type=_tolerance, default=DEFAULT_TOLERANCE)
    pr.add_argument("--out", help="CSV path; the report goes next to it as .report.json")
    pr.add_argument("--report", help="explicit path for the verification report JSON")
    pr.set_defaults(func=cmd_profile)

    c = sub.add_parser("catalog", help="list the built-in example families")
    c.add_argument("--json", action="store_true")
    c.add_argument("-v", "--verbose", action="store_true")
    c.set_defaults(func=cmd_catalog)
    return p


def _join_negative_values(argv: list) -> list:
    # "--rho -20:20" would otherwise be read as an unknown option
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--rho" and i + 1 < len(argv):
            out.append(f"--rho={argv[i + 1]}")
            i += 2
            continue
        out.append(argv[i])
        i += 1
    return out


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except InvalidSpec as exc:
        sys.stderr.write(f"invalid spec: {exc}\n")
        return EXIT_INPUT
    except SolverFailure as exc:
        sys.stderr.write(f"solver failure: {exc}\n")
        return EXIT_SOLVER
    except QuadratureFailure as exc:
        sys.stderr.write(f"quadrature failure: {exc}\n")
        return EXIT_QUADRATURE
    except PositivityViolation as exc:
        sys.stderr.write(f"verification failure: {exc}\n")
        return EXIT_VERIFICATION
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
