"""Command-line front door: solve, verify, advise, match, report, serve.

Exit codes: 0 success or all verifications pass, 1 verification failure
or runtime error, 2 usage error.  Identical invocations print identical
bytes; JSON output uses sorted keys and fixed separators.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .bipartite import (
    solve_bipartite,
    verify_closed_form,
    verify_remainder_formula,
    verify_split_inequalities,
)
from .core import encode_decision, format_rational, validate_mode
from .strategies import (
    closed_form_strategy,
    simulate_match,
    table_strategy,
    verify_equilibrium,
)
from .tables import dump_json, load_or_solve
from .tripartite import solve_tripartite, verify_candidate


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="guesswho",
        description="Exact solver, verifier, and playable engine for Guess Who.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="build a solve table or print one state value")
    _common_mode(solve)
    solve.add_argument("--n-max", type=int, default=24)
    solve.add_argument("--state", type=_state_arg, help="single state as n,m")
    solve.add_argument("--n", type=int, help="single-state row (with --m)")
    solve.add_argument("--m", type=int, help="single-state column (with --n)")
    solve.add_argument("--format", choices=("json", "csv"), default="json")
    solve.add_argument("--out", type=Path)

    verify = sub.add_parser("verify", help="run every verifier for a mode")
    verify.add_argument("--mode", choices=("bi", "tri", "all"), default="all")
    verify.add_argument("--n-max", type=int, default=24)
    verify.add_argument("--strict", action="store_true",
                        help="promote known report-only mismatches to failures")
    verify.add_argument("--out", type=Path, help="write the full JSON report here")

    advise = sub.add_parser("advise", help="print optimal decisions for one state")
    _common_mode(advise)
    advise.add_argument("--state", type=_state_arg, required=True)
    advise.add_argument("--n-max", type=int, default=None)

    match = sub.add_parser("match", help="seeded optimal-self-play Monte Carlo match")
    _common_mode(match)
    match.add_argument("--start", type=_state_arg, default=(24, 24))
    match.add_argument("--trials", type=int, default=10000)
    match.add_argument("--seed", type=int, default=0)
    match.add_argument("--out", type=Path)

    report = sub.add_parser("report", help="write tables, figures, and findings")
    report.add_argument("--out", type=Path, default=Path("report"))
    report.add_argument("--n-max", type=int, default=24)

    serve = sub.add_parser("serve", help="run the JSON HTTP service")
    serve.add_argument("--addr", default=None, help="host:port, default GW_ADDR or 127.0.0.1:8000")
    serve.add_argument("--n-max", type=int, default=24)

    return parser


def _common_mode(parser) -> None:
    parser.add_argument("--mode", choices=("bi", "tri"), default="bi")


def _state_arg(text: str):
    try:
        n, m = text.split(",")
        return (int(n), int(m))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n,m integers, got {text!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.command == "solve":
        return cmd_solve(args)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "advise":
        return cmd_advise(args)
    if args.command == "match":
        return cmd_match(args)
    if args.command == "report":
        return cmd_report(args)
    return cmd_serve(args)


def _single_state(args):
    if args.state is not None:
        return args.state
    if args.n is not None and args.m is not None:
        return (args.n, args.m)
    if args.n is not None or args.m is not None:
        raise SystemExit2("--n and --m must be given together")
    return None


class SystemExit2(Exception):
    """Usage error discovered after argparse; mapped to exit code 2."""


def cmd_solve(args) -> int:
    validate_mode(args.mode)
    try:
        state = _single_state(args)
    except SystemExit2 as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    if state is not None:
        n, m = state
        if n < 1 or m < 1:
            print("usage error: state components must be >= 1", file=sys.stderr)
            return 2
        table = load_or_solve(args.mode, max(n, m))
        print(format_rational(table.value(n, m)))
        return 0
    table = load_or_solve(args.mode, args.n_max)
    if args.format == "json":
        text = dump_json(table.to_payload()) + "\n"
    else:
        rows = table.csv_rows()
        text = "\n".join(",".join(_csv_quote(cell) for cell in row) for row in rows) + "\n"
    if args.out:
        args.out.write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _csv_quote(cell: str) -> str:
    if "," in cell or '"' in cell:
        return '"' + cell.replace('"', '""') + '"'
    return cell


def cmd_verify(args) -> int:
    reports = []
    if args.mode in ("bi", "all"):
        table = load_or_solve("bi", args.n_max)
        reports.append(verify_closed_form(table))
        reports.append(verify_split_inequalities(table))
        reports.append(verify_remainder_formula(200))
        reports.append(verify_equilibrium(closed_form_strategy, args.n_max, "bi", table=table))
    if args.mode in ("tri", "all"):
        table = load_or_solve("tri", args.n_max)
        reports.append(verify_candidate(table))
        reports.append(verify_equilibrium(table_strategy(table), args.n_max, "tri", table=table))
    failed = False
    for report in reports:
        ok = report.passed_strict() if args.strict else report.passed
        status = "pass" if ok else "FAIL"
        line = f"[{status}] {report.name}"
        if report.failures:
            line += f" ({len(report.failures)} failure(s))"
        if report.mismatches:
            line += f" ({len(report.mismatches)} known mismatch(es))"
        print(line)
        for note in report.notes:
            print(f"    note: {note}")
        failed = failed or not ok
    if args.out:
        payload = {"n_max": args.n_max, "strict": args.strict,
                   "reports": [r.to_payload() for r in reports]}
        args.out.write_text(dump_json(payload) + "\n")
        print(f"wrote {args.out}")
    return 1 if failed else 0


def cmd_advise(args) -> int:
    n, m = args.state
    if n < 1 or m < 1:
        print("usage error: state components must be >= 1", file=sys.stderr)
        return 2
    n_max = args.n_max or max(n, m)
    if n > n_max or m > n_max:
        print("usage error: state outside --n-max", file=sys.stderr)
        return 2
    table = load_or_solve(args.mode, n_max)
    decisions = [encode_decision(d) for d in table.optimal(n, m)]
    print(f"value {format_rational(table.value(n, m))}")
    print(f"optimal {json.dumps(decisions)}")
    return 0


def cmd_match(args) -> int:
    n, m = args.start
    if args.trials < 1:
        print("usage error: --trials must be >= 1", file=sys.stderr)
        return 2
    table = load_or_solve(args.mode, max(n, m))
    strategy = table_strategy(table)
    report = simulate_match(strategy, strategy, (n, m), args.mode, args.trials, args.seed)
    text = dump_json(report.to_payload()) + "\n"
    sys.stdout.write(text)
    if args.out:
        args.out.write_text(text)
    return 0


def cmd_report(args) -> int:
    from .report import generate_report

    written = generate_report(args.out, n_max=args.n_max)
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_serve(args) -> int:
    from .service import run

    run(addr=args.addr, n_max=args.n_max)
    return 0


if __name__ == "__main__":
    sys.exit(main())
