"""Command line: ``goldcode params|dist|verify``.

Exit codes: 0 success, 1 a comparison failed, 2 invalid parameters,
3 enumeration budget refused.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from math import gcd

from . import closed
from .code import BudgetExceeded, dc_support, scan
from .field import FieldError, field_new
from .forms import FAMILIES, CodeParams, ParamsError, exponents, frobenius_shifts, validate
from .verify import (
    CHECK_NAMES,
    RunReport,
    check_params,
    compare_tables,
    desk_suite,
    family_invariance,
    identity_suite,
    v_suite,
)

EXIT_OK, EXIT_MISMATCH, EXIT_PARAMS, EXIT_BUDGET = 0, 1, 2, 3


def _int(text: str) -> int:
    return int(text, 0)


def _budget(args) -> int | None:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("GOLDCODE_BUDGET")
    return _int(env) if env else None


def _threads(args) -> int:
    return args.threads if args.threads else (os.cpu_count() or 1)


def _params(args, family: str | None = None) -> CodeParams:
    if args.m is None or args.k is None:
        raise ParamsError("-m and -k are required")
    e = args.e if args.e is not None else gcd(args.m, args.d)
    return validate(CodeParams(args.m, args.d, e, args.k, family or args.family))


def _emit(obj, fmt: str, rows=None, header=None) -> None:
    if fmt == "csv" and rows is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _fail_params(msg: str) -> int:
    _emit({"valid": False, "error": msg}, "json")
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_PARAMS


def cmd_params(args) -> int:
    try:
        p = _params(args)
    except ParamsError as exc:
        return _fail_params(str(exc))
    out = {
        "valid": True,
        "params": p.to_json(),
        "exponents": exponents(p),
        "frobenius_shifts": frobenius_shifts(p),
        "ranks": p.ranks(),
        "dc_support": sorted(dc_support(p)),
    }
    rows = [[k, json.dumps(v)] for k, v in sorted(out.items())]
    _emit(out, args.format, rows, ["key", "value"])
    return EXIT_OK


def cmd_dist(args) -> int:
    try:
        p = _params(args)
        ctx = field_new(p.m, args.poly)
    except (ParamsError, FieldError) as exc:
        return _fail_params(str(exc))
    report = RunReport(params={**p.to_json(), "poly": ctx.poly})
    try:
        if args.mode in ("enumerate", "both"):
            with report.phase("enumerate"):
                res = scan(p, ctx, threads=_threads(args), budget=_budget(args))
            report.tables.append(res.table)
            report.notes["checks"] = {k: res.checks.get(k, 0) for k in CHECK_NAMES}
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.mode in ("closed", "both"):
        with report.phase("closed"):
            ref = closed.dist_closed(p)
            bal = closed.balanced_closed(p)
        report.tables.append(ref)
        report.notes["balanced_approx"] = {
            "exact": str(bal.exact),
            "approx": str(bal.approx),
            "rel_error": f"{float(bal.rel_error):.6g}",
        }
        if args.mode == "both":
            enum = report.tables[0]
            compare_tables(report, ref, enum)
            report.add("balanced (balanced-count formula)", bal.exact, enum.balanced)
    primary = report.tables[0]
    out = {**primary.to_json(), "params": report.params}
    out["comparisons"] = [c.to_json() for c in report.comparisons]
    out["status"] = report.status
    out["notes"] = report.notes
    if args.mode == "both":
        out["reference"] = report.tables[1].to_json()
    if args.timing:
        out["wall_time_ms"] = {k: round(v, 3) for k, v in report.wall_time_ms.items()}
    rows = [r for t in report.tables for r in t.csv_rows()]
    _emit(out, args.format, rows, ["r", "eps", "count", "source"])
    return EXIT_OK if report.status == "pass" else EXIT_MISMATCH


def cmd_verify(args) -> int:
    threads = _threads(args)
    try:
        if args.preset == "desk" or args.m is None:
            report = desk_suite(threads=threads, fault=args.inject_fault)
        else:
            fams = [f.strip() for f in args.families.split(",")] if args.families else [args.family]
            report = RunReport()
            tabs = {}
            plist = [_params(args, f) for f in fams]
            report.params = {**plist[0].to_json(), "families": fams}
            for p in plist:
                tabs[p.family] = check_params(
                    report, p, poly=args.poly, threads=threads, budget=_budget(args), fault=args.inject_fault
                )
                v_suite(report, p)
            if len(fams) > 1:
                family_invariance(report, tabs, "families")
            identity_suite(report)
    except (ParamsError, FieldError) as exc:
        return _fail_params(str(exc))
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    out = report.to_json(timing=args.timing)
    out["tables"] = len(report.tables)
    rows = [[c.name, str(c.expected), str(c.actual), "pass" if c.match else "FAIL"] for c in report.comparisons]
    _emit(out, args.format, rows, ["check", "expected", "actual", "result"])
    for c in report.failures():
        print(f"FAIL {c.name}: expected {c.expected}, got {c.actual}", file=sys.stderr)
    return EXIT_OK if report.status == "pass" else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-m", type=int)
    common.add_argument("-d", type=int, default=1)
    common.add_argument("-e", type=int, help="defaults to gcd(m, d)")
    common.add_argument("-k", type=int)
    common.add_argument("-f", "--family", choices=FAMILIES, default="A")
    common.add_argument("--poly", type=_int, help="defining polynomial, bit i = coeff of x^i")
    common.add_argument("--threads", type=int, default=0, help="worker processes (default: all cores)")
    common.add_argument("--budget", type=_int, help="max enumeration iterations (env GOLDCODE_BUDGET)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings in JSON")

    ap = argparse.ArgumentParser(prog="goldcode", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("params", parents=[common], help="validate parameters")
    sp.set_defaults(func=cmd_params)
    sp = sub.add_parser("dist", parents=[common], help="DC-component and rank distributions")
    sp.add_argument("--mode", choices=("enumerate", "closed", "both"), default="both")
    sp.set_defaults(func=cmd_dist)
    sp = sub.add_parser("verify", parents=[common], help="run the cross-check suite")
    sp.add_argument("--preset", choices=("desk",))
    sp.add_argument("--families", help="comma-separated, e.g. A,B,C")
    sp.add_argument("--inject-fault", type=int, default=0, help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
