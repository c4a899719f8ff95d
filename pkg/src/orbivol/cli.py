"""Command-line front end: verification suites, curvature scans, bound
tables and the ball-radius root, with JSON/CSV/Markdown output.

Exit codes: 0 success, 1 check failure, 2 usage or domain error,
3 computation-not-found.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .basis import build_basis
from .bounds import (
    PUBLISHED_CELLS,
    BoundSpec,
    bound_value,
    hurwitz_order_bound,
    q_bound_first_principles,
    published_table,
    table_check_passed,
)
from .curvature import (
    basis_plane_scan,
    default_scaled_metric,
    global_curvature_scan,
    printed_curvature_bound,
)
from .quaternion import DomainError, GroundField
from .special import CLAIMED_SP_RADIUS, RootNotFoundError, wang_F, wang_root
from .verify import run_verification

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_FOUND = 3


def _num(value: float) -> dict:
    """Decimal string with six significant digits plus log10."""
    if value == 0.0:
        return {"value": "0", "log10": None}
    return {"value": f"{value:.5e}",
            "log10": round(math.log10(abs(value)), 9)}


def _emit(payload, args) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True)
    elif args.format == "csv":
        text = _to_csv(payload)
    else:
        text = _to_markdown(payload)
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_CSV_CANONICAL = ("field", "variant", "n", "mantissa", "exp10")


def _to_csv(payload) -> str:
    rows = payload.get("rows")
    if rows is None:
        return json.dumps(payload, sort_keys=True)
    keys = list(rows[0].keys())
    if set(_CSV_CANONICAL) <= set(keys):
        keys = list(_CSV_CANONICAL)
    lines = [",".join(keys)]
    for row in rows:
        lines.append(",".join(str(row[k]) for k in keys))
    return "\n".join(lines)


def _to_markdown(payload) -> str:
    table = payload.get("markdown_table")
    if table is None:
        rows = payload.get("rows")
        if not rows:
            return "```\n" + json.dumps(payload, indent=2, sort_keys=True) + "\n```"
        head = list(rows[0].keys())
        lines = ["| " + " | ".join(head) + " |",
                 "|" + "---|" * len(head)]
        for row in rows:
            lines.append("| " + " | ".join(str(v) for v in row.values()) + " |")
        return "\n".join(lines)
    return table


# -- subcommands ----------------------------------------------------------

def cmd_verify(args) -> int:
    field = GroundField.parse(args.field)
    if args.n < 1:
        raise DomainError(f"rank must be >= 1, got {args.n}")
    report = run_verification(field, args.n, trials=args.trials,
                              seed=args.seed, tol=args.tol)
    payload = report.to_dict()
    payload["rows"] = [c.to_dict() for c in report.checks]
    _emit(payload, args)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def cmd_bounds(args) -> int:
    field = GroundField.parse(args.field)
    lo, hi = _parse_range(args.n_range)
    if lo < 1 or hi > 64 or lo > hi:
        raise DomainError(f"rank range must lie in 1..64, got {args.n_range}")
    variant = "main" if field is GroundField.QUATERNION else args.variant
    mode = args.mode.replace("-", "_")

    rows = []
    for n in range(lo, hi + 1):
        if mode == "first_principles" and field is GroundField.QUATERNION:
            report = q_bound_first_principles(n)
        else:
            report = bound_value(BoundSpec(field, variant, n, mode=mode))
        mantissa, exp10 = report.value.to_decimal()
        rows.append({"field": field.value, "variant": report.spec.variant,
                     "n": n, "mantissa": round(mantissa, 6), "exp10": exp10,
                     "log10": round(report.value.log10, 9)})
    payload = {"mode": mode, "rows": rows}

    exit_code = EXIT_OK
    if args.check_table:
        checks = published_table()
        payload["table_check"] = [c.to_dict() for c in checks]
        payload["table_check_passed"] = table_check_passed(
            checks, strict=args.strict_table)
        if not payload["table_check_passed"]:
            exit_code = EXIT_CHECK_FAILED
    if args.format == "md":
        payload["markdown_table"] = _bounds_markdown()
    _emit(payload, args)
    return exit_code


def _bounds_markdown() -> str:
    """Side-by-side layout of the published table: rows n, columns
    original/improved R and C plus Q."""
    cols = [("r", "original"), ("c", "original"), ("r", "improved"),
            ("c", "improved"), ("h", "main")]
    titles = ["R original", "C original", "R improved", "C improved", "Q"]
    by_key = {(c.cell.field.value, c.cell.variant, c.cell.n): c
              for c in published_table()}
    lines = ["| n | " + " | ".join(titles) + " |",
             "|---" * 6 + "|"]
    for n in (1, 2, 3, 4):
        cells = []
        for fld, variant in cols:
            chk = by_key.get((fld, variant, n))
            if chk is None:
                cells.append("")
            else:
                cells.append(f"{chk.report.value.format_scientific(5)} "
                             f"({chk.status})")
        lines.append(f"| {n} | " + " | ".join(cells) + " |")
    return "\n".join(lines)


def cmd_curvature_scan(args) -> int:
    field = GroundField.parse(args.field)
    if args.n < 1:
        raise DomainError(f"rank must be >= 1, got {args.n}")
    model = build_basis(field, args.n)
    metric = default_scaled_metric(model)
    bound = printed_curvature_bound(field, args.n)
    basis_max, basis_sample = basis_plane_scan(metric)
    report = global_curvature_scan(metric, samples=args.samples,
                                   ascent_iters=args.ascent_iters,
                                   seed=args.seed, bound=bound)
    ok = report.empirical_max <= bound + args.tol
    payload = report.to_dict()
    payload.update({
        "basis_plane_max": basis_max,
        "bound_respected": bool(ok),
        "empirical": _num(report.empirical_max),
        "tolerance": args.tol,
    })
    _emit(payload, args)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_wang_root(args) -> int:
    try:
        root = wang_root(args.c1, args.c2, t_max=args.t_max)
    except RootNotFoundError as exc:
        _emit({"error": str(exc), "root": None,
               "paper_claim": CLAIMED_SP_RADIUS}, args)
        return EXIT_NOT_FOUND
    residual = wang_F(root, args.c1, args.c2)
    agrees = abs(root - CLAIMED_SP_RADIUS) <= 1e-3
    payload = {
        "root": _num(root),
        "residual": residual,
        "paper_claim": CLAIMED_SP_RADIUS,
        "agrees": bool(agrees),
        "note": ("the printed radius function and the quoted radius "
                 "disagree; both are reported, neither is adjusted"),
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_hurwitz(args) -> int:
    ratio, floor = hurwitz_order_bound(args.volume, args.n)
    payload = {"volume": args.volume, "n": args.n,
               "ratio": _num(ratio) if math.isfinite(ratio) else
               {"value": "inf", "log10": None},
               "max_group_order": floor}
    _emit(payload, args)
    return EXIT_OK


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbivol",
        description="Verification suites, curvature scans and volume "
                    "lower bounds for hyperbolic n-orbifolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "md"),
                       default="json")
        p.add_argument("--output", default=None,
                       help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("verify", help="run the identity/oracle suites")
    p.add_argument("--field", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="evaluate volume lower bounds")
    p.add_argument("--field", required=True)
    p.add_argument("--variant", choices=("original", "improved"),
                   default="improved")
    p.add_argument("--n-range", default="1..4")
    p.add_argument("--mode", choices=("printed", "published",
                                      "first-principles"),
                   default="printed")
    p.add_argument("--check-table", action="store_true",
                   help="compare against the published table")
    p.add_argument("--strict-table", action="store_true",
                   help="fail on documented paper-side deviations too")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("curvature-scan",
                       help="basis-plane and random-plane curvature scan")
    p.add_argument("--field", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--ascent-iters", type=int, default=200)
    common(p)
    p.set_defaults(func=cmd_curvature_scan)

    p = sub.add_parser("wang-root",
                       help="least positive zero of the ball-radius function")
    p.add_argument("--c1", type=float, required=True)
    p.add_argument("--c2", type=float, required=True)
    p.add_argument("--t-max", type=float, default=2.0)
    common(p)
    p.set_defaults(func=cmd_wang_root)

    p = sub.add_parser("hurwitz",
                       help="isometry group order cap from a volume")
    p.add_argument("--volume", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_hurwitz)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RootNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND


if __name__ == "__main__":
    sys.exit(main())
