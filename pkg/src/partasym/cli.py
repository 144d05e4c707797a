"""Command-line interface.

Subcommands:
  count       exact count table (CSV `n,count` or JSON)
  delta       numeric and expansion saddle points over an n-grid
  formula     the asymptotic-formula document (JSON)
  compare     exact counts vs formula vs saddle points per n
  check-cond3 numeric margins of the sin^2 lower-bound condition
  belief      full formula vs rightmost-pole-only formula vs exact counts

Exit codes: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional

from mpmath import mpf

from .exact import exact_counts
from .expansion import asymptotic_formula
from .harness import (BELIEF_COLUMNS, COMPARE_COLUMNS, COND3_COLUMNS, RunConfig,
                      belief_table, compare_table, condition3_check, parse_ngrid,
                      rows_to_csv, rows_to_json)
from .precision import set_working_precision
from .saddle import NoSolutionError, solve_delta
from .weights import (StructureKind, dirichlet_data, eval_weights,
                      family_from_json, normalize_family)


def _add_common(p: argparse.ArgumentParser, ngrid: bool = False, n: bool = False):
    p.add_argument("--family", required=True,
                   help="family document (JSON; see README)")
    p.add_argument("--kind", required=True, type=int, choices=(1, 2, 3),
                   help="1=partitions, 2=selections, 3=assemblies")
    if n:
        p.add_argument("--n", required=True, type=int, help="size n")
    if ngrid:
        p.add_argument("--ngrid", required=True,
                       help="comma list or start:stop:geometric:count")
    p.add_argument("--precision", type=int, default=60,
                   help="working precision in decimal digits (default 60)")
    p.add_argument("--tol", type=str, default=None,
                   help="saddle residual tolerance relative to n (default 1e-30)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="partasym",
        description="exact counts and multi-pole saddle-point asymptotics "
                    "for weighted partitions, selections and assemblies")
    sub = ap.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("count", help="exact count table"), n=True)
    _add_common(sub.add_parser("delta", help="saddle points over a grid"),
                ngrid=True)
    _add_common(sub.add_parser("formula", help="asymptotic formula document"))
    _add_common(sub.add_parser("compare", help="exact vs asymptotic table"),
                ngrid=True)
    _add_common(sub.add_parser("belief", help="rightmost-pole-only comparison"),
                ngrid=True)

    c3 = sub.add_parser("check-cond3", help="sin^2 lower-bound margins")
    _add_common(c3)
    c3.add_argument("--deltas", required=True,
                    help="comma-separated positive deltas, e.g. 0.01,0.001")
    c3.add_argument("--alphas", required=True,
                    help="comma-separated alphas in (0, 1/2]")
    c3.add_argument("--K", type=int, default=None,
                    help="summation truncation (default ceil(10/min delta))")
    c3.add_argument("--eps", type=float, default=0.1)
    return ap


@dataclass
class _SaddleRow:
    n: int
    delta_num: mpf
    residual: mpf
    delta_exp: mpf
    n_abs_diff: mpf


def _write(text: str, out: Optional[str]):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _run(args) -> int:
    set_working_precision(args.precision)
    tol = mpf(args.tol) if getattr(args, "tol", None) else None
    family = family_from_json(args.family)
    kind = StructureKind(args.kind)

    if args.command == "count":
        b = eval_weights(family, max(args.n, 1))
        table = exact_counts(kind, b, args.n)
        text = table.to_csv() if args.format == "csv" else _counts_json(table)
        _write(text, args.out)
        return 0

    if args.command == "formula":
        dd = dirichlet_data(normalize_family(family))
        _write(asymptotic_formula(kind, dd).to_json(), args.out)
        return 0

    if args.command == "delta":
        ns = parse_ngrid(args.ngrid)
        from .expansion import delta_expansion
        dd = dirichlet_data(normalize_family(family))
        dexp = delta_expansion(kind, dd)
        b = eval_weights(normalize_family(family), max(ns))
        e = 1 / (float(dd.rho_r) + 1)
        rows = []
        for n in ns:
            if n == 0:
                continue
            sp = solve_delta(kind, b, n, tol=tol,
                             delta_hint=float(dexp.lead) * n**(-e))
            de = dexp.evaluate(n)
            rows.append(_SaddleRow(n, sp.delta, sp.residual, de,
                                   n * abs(sp.delta - de)))
        cols = ("n", "delta_num", "residual", "delta_exp", "n_abs_diff")
        text = rows_to_csv(rows, cols) if args.format == "csv" \
            else rows_to_json(rows, cols)
        _write(text, args.out)
        return 0

    if args.command == "compare":
        cfg = RunConfig(family=family, kind=kind, ns=parse_ngrid(args.ngrid),
                        precision=args.precision, tol=tol, fmt=args.format)
        rows = compare_table(cfg)
        text = rows_to_csv(rows, COMPARE_COLUMNS) if args.format == "csv" \
            else rows_to_json(rows, COMPARE_COLUMNS)
        _write(text, args.out)
        return 0

    if args.command == "belief":
        cfg = RunConfig(family=family, kind=kind, ns=parse_ngrid(args.ngrid),
                        precision=args.precision, tol=tol, fmt=args.format)
        rows = belief_table(cfg)
        text = rows_to_csv(rows, BELIEF_COLUMNS) if args.format == "csv" \
            else rows_to_json(rows, BELIEF_COLUMNS)
        _write(text, args.out)
        return 0

    if args.command == "check-cond3":
        deltas = [float(x) for x in args.deltas.split(",") if x.strip()]
        alphas = [float(x) for x in args.alphas.split(",") if x.strip()]
        K = args.K if args.K is not None else int(10 / min(deltas)) + 1
        report = condition3_check(family, kind, deltas, alphas, K, args.eps)
        text = rows_to_csv(report.rows, COND3_COLUMNS) if args.format == "csv" \
            else rows_to_json(report.rows, COND3_COLUMNS)
        summary = (f"# min_margin={report.min_margin!r} "
                   f"{'PASS' if report.passed else 'FAIL'}\n")
        _write(text + summary, args.out)
        return 0

    raise AssertionError(f"unhandled command {args.command}")


def _counts_json(table) -> str:
    import json
    from .exact import _count_str
    return json.dumps([{"n": n, "count": _count_str(c)}
                       for n, c in enumerate(table.counts)], indent=2)


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args)
    except (NoSolutionError, ValueError, TypeError, ArithmeticError, OSError,
            KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
