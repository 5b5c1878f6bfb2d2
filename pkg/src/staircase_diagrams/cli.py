"""Command-line surface: enumeration, series, tables, verification, and the
Dyck bijection.  All data output is byte-deterministic for fixed flags.

Exit codes: 0 success, 2 usage errors, 3 enumeration limit exceeded,
1 verification failures.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import series as ser
from .diagram import diagram_from_json, diagram_to_json
from .graphs import make_path, make_star, make_type_d, make_type_e
from .oracle import (DyckPath, EnumFilter, LimitExceeded, count_diagrams,
                     diagram_to_dyck, dyck_to_diagram, iter_diagrams)
from .verify import (all_passed, report_lines, reproduce_continuation_table,
                     run_suite, summarize)


def _build_graph(args):
    if args.family == "star":
        if not args.branches:
            raise SystemExit(2)
        lengths = [int(v) for v in args.branches.split(",")]
        return make_star(lengths)
    if args.n is None:
        print("--n is required for families A, D, E", file=sys.stderr)
        raise SystemExit(2)
    if args.family == "A":
        return make_path(args.n)
    if args.family == "D":
        return make_type_d(args.n)
    return make_type_e(args.n)


def cmd_enumerate(args) -> int:
    g = _build_graph(args)
    f = EnumFilter.parse(args.filter)
    try:
        if args.emit == "count":
            print(count_diagrams(g, f, limit=args.limit))
        else:
            for d in iter_diagrams(g, f, limit=args.limit):
                print(diagram_to_json(d))
    except LimitExceeded as exc:
        print(str(exc), file=sys.stderr)
        return 3
    return 0


_SERIES_BUILDERS = {
    "E": lambda order, k, corrected: ser.e_closed(order, corrected),
    "EDisc": lambda order, k, corrected: ser.e_disc_closed(order, corrected),
    "EAssembled": lambda order, k, corrected: ser.e_assembled(order),
    "Ik": lambda order, k, corrected: ser.i_k_series(k, order),
    "IBk": lambda order, k, corrected: ser.ib_k_series(k, order),
    "Bk": lambda order, k, corrected: ser.b_k_series(k, order),
    "I": lambda order, k, corrected: ser.i_series(order),
    "Br": lambda order, k, corrected: ser.br_series(order),
    "A": lambda order, k, corrected: ser.path_full_assembled(order),
    "ADisc": lambda order, k, corrected: ser.path_all_assembled(order),
    "D": lambda order, k, corrected: ser.d_full_assembled(order),
}


def cmd_series(args) -> int:
    if args.order > 64:
        print("order is capped at 64", file=sys.stderr)
        return 2
    if args.which in ("Ik", "IBk", "Bk") and args.k is None:
        print(f"--k is required for {args.which}", file=sys.stderr)
        return 2
    s = _SERIES_BUILDERS[args.which](args.order, args.k, args.corrected)
    if args.emit == "csv":
        sys.stdout.write(ser.series_to_csv(s))
    else:
        print(json.dumps({
            "which": args.which,
            "order": s.order,
            "coefficients": [[c.numerator, c.denominator] for c in s.coeffs],
        }, separators=(",", ":")))
    return 0


def cmd_table(args) -> int:
    rows = reproduce_continuation_table()
    header = f"{'sight':>6} {'parametrization':>28} {'printed':>8} {'computed':>9}  status"
    print(header)
    for row in rows:
        mark = "MATCH" if row["status"] == "pass" else row["status"].upper()
        print(f"{row['sight']:>6} {row['parametrization']:>28} "
              f"{row['printed']:>8} {row['computed']:>9}  {mark}")
    if args.report:
        with open(args.report, "w") as fh:
            for row in rows:
                fh.write(json.dumps(row, separators=(",", ":")) + "\n")
    return 0 if all(r["status"] in ("pass", "paper-discrepancy")
                    for r in rows) else 1


def cmd_verify(args) -> int:
    results = run_suite(args.suite)
    lines = report_lines(results)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(lines)
    else:
        sys.stdout.write(lines)
    print(summarize(results), file=sys.stderr)
    return 0 if all_passed(results) else 1


def cmd_biject(args) -> int:
    if args.from_dyck:
        runs = [int(v) for v in args.from_dyck.split(",")]
        if args.n is None:
            print("--n is required with --from-dyck", file=sys.stderr)
            return 2
        n = args.n
        # the final vertical run is forced by n, so accept it omitted or wrong
        if len(runs) % 2 == 1:
            runs.append(n - sum(runs[1::2]))
        else:
            runs[-1] = n - sum(runs[1:-1][::2])
        try:
            d = dyck_to_diagram(DyckPath(tuple(runs)))
        except ValueError as exc:
            print(f"not a valid run encoding: {exc}", file=sys.stderr)
            return 2
        print(diagram_to_json(d))
        return 0
    if args.to_dyck:
        with open(args.to_dyck) as fh:
            d = diagram_from_json(fh.read())
        try:
            p = diagram_to_dyck(d)
        except ValueError as exc:
            print(f"diagram has no Dyck encoding: {exc}", file=sys.stderr)
            return 2
        print(",".join(str(r) for r in p.steps))
        return 0
    print("one of --from-dyck or --to-dyck is required", file=sys.stderr)
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="staircase",
        description="Exact enumeration and generating functions for "
                    "staircase diagrams over path and star graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="count or stream diagrams")
    p_enum.add_argument("--family", choices=["A", "D", "E", "star"],
                        required=True)
    p_enum.add_argument("--n", type=int)
    p_enum.add_argument("--branches", help="comma-separated star branch lengths")
    p_enum.add_argument("--filter", default="all",
                        choices=["all", "connected", "full", "connected-full"])
    p_enum.add_argument("--emit", default="count", choices=["count", "jsonl"])
    p_enum.add_argument("--limit", type=int, default=None,
                        help="override the vertex-count guard")
    p_enum.set_defaults(fn=cmd_enumerate)

    p_series = sub.add_parser("series", help="exact series coefficients")
    p_series.add_argument("--which", required=True,
                          choices=sorted(_SERIES_BUILDERS))
    p_series.add_argument("--order", type=int, required=True)
    p_series.add_argument("--k", type=int)
    p_series.add_argument("--corrected", action="store_true",
                          help="use the corrected closed-form numerators")
    p_series.add_argument("--emit", default="csv", choices=["csv", "json"])
    p_series.set_defaults(fn=cmd_series)

    p_table = sub.add_parser("table", help="reproduce the continuation table")
    p_table.add_argument("--report", help="also write JSON lines here")
    p_table.set_defaults(fn=cmd_table)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", default="all")
    p_verify.add_argument("--report", help="write JSON lines here")
    p_verify.set_defaults(fn=cmd_verify)

    p_biject = sub.add_parser("biject", help="Dyck runs <-> diagram JSON")
    p_biject.add_argument("--from-dyck", help="comma-separated run lengths")
    p_biject.add_argument("--n", type=int, help="path size for --from-dyck")
    p_biject.add_argument("--to-dyck", help="diagram JSON file")
    p_biject.set_defaults(fn=cmd_biject)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
