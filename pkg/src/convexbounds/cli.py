"""Command-line entry point: ``convexbounds {verify,falsify,tightness,report}``.

Exit codes: 0 when every checked inequality holds (or no counterexample was
found), 1 when any violation is found, 2 on usage or runtime errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import __version__
from .bounds import Variant
from .harness import (
    CSV_COLUMNS,
    THEOREM_IDS,
    Report,
    SweepPlan,
    falsify,
    flat_record,
    parse_theorem_ids,
    sweep,
    tightness,
    write_atomic,
)
from .quad import DEFAULT_ATOL, DEFAULT_RTOL

OUTPUT_DIR_ENV = "CONVEXBOUNDS_OUTPUT_DIR"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2

# theorems whose printed form is reported next to the derived one under --compare-printed
COMPARE_PRINTED = ("T5", "T9", "T10", "C5")

DEFAULTS = {
    "theorems": list(THEOREM_IDS),
    "theorem": None,
    "variant": "as-derived",
    "cases": 100,
    "budget": 500,
    "seed": 0,
    "rel_tol": DEFAULT_RTOL,
    "abs_tol": DEFAULT_ATOL,
    "workers": 1,
    "format": "json",
    "out": None,
    "compare_printed": False,
    "input": None,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _theorem_list(text):
    try:
        return parse_theorem_ids(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _one_theorem(text):
    ids = _theorem_list(text)
    if len(ids) != 1:
        raise argparse.ArgumentTypeError(f"expected a single theorem id, got {text!r}")
    return ids[0]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON file of option values; flags override it")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--variant", choices=["as-printed", "as-derived", "both"], default=argparse.SUPPRESS)
    common.add_argument("--rel-tol", type=_positive_float, default=argparse.SUPPRESS)
    common.add_argument("--abs-tol", type=_positive_float, default=argparse.SUPPRESS)
    common.add_argument("--out", type=Path, default=argparse.SUPPRESS, help="report path (default: $%s/<cmd>.<fmt>)" % OUTPUT_DIR_ENV)
    common.add_argument("--format", choices=["json", "csv"], default=argparse.SUPPRESS)

    parser = _Parser(prog="convexbounds", description="Numerically verify integral inequalities for generalized convex functions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="run a seeded verification sweep")
    p.add_argument("--theorems", type=_theorem_list, default=argparse.SUPPRESS)
    p.add_argument("--cases", type=_positive_int, default=argparse.SUPPRESS)
    p.add_argument("--workers", type=_positive_int, default=argparse.SUPPRESS)
    p.add_argument("--compare-printed", action="store_true", default=argparse.SUPPRESS,
                   help="also run the printed forms of %s" % ", ".join(COMPARE_PRINTED))  # fmt: skip

    for name, helptext in (("falsify", "search for a counterexample"), ("tightness", "measure the slack distribution")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--theorem", type=_one_theorem, default=argparse.SUPPRESS)
        p.add_argument("--budget", type=_positive_int, default=argparse.SUPPRESS)

    p = sub.add_parser("report", parents=[common], help="summarize or convert a saved JSON report")
    p.add_argument("input", type=Path)
    return parser


def _load_config(path):
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    out = {}
    for key, value in data.items():
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"unknown config key {key!r}")
        out[key] = value
    if "theorems" in out:
        out["theorems"] = parse_theorem_ids(out["theorems"])
    if "theorem" in out:
        out["theorem"] = parse_theorem_ids(out["theorem"])[0]
    if "variant" in out:
        out["variant"] = out["variant"] if out["variant"] == "both" else Variant.parse(out["variant"]).value
    return out


def resolve_options(args) -> dict:
    """Merge defaults, then the config file, then explicit flags."""
    opts = dict(DEFAULTS)
    opts.update(_load_config(getattr(args, "config", None)))
    opts.update({k: v for k, v in vars(args).items() if k not in ("config", "command")})
    if args.command in ("falsify", "tightness") and opts["theorem"] is None:
        raise UsageError(f"{args.command} needs --theorem")
    if args.command in ("falsify", "tightness") and opts["variant"] == "both":
        raise UsageError(f"{args.command} takes a single --variant")
    if opts["cases"] < 1 or opts["budget"] < 1:
        raise UsageError("--cases and --budget must be >= 1")
    return opts


def _out_path(opts, command):
    if opts["out"] is not None:
        return Path(opts["out"])
    base = Path(os.environ.get(OUTPUT_DIR_ENV, "."))
    return base / f"{command}.{opts['format']}"


def _variants(opts):
    if opts["variant"] == "both":
        return ["as-derived", "as-printed"]
    return [opts["variant"]]


def _print_summary(summary):
    width = max((len(k) for k in summary["by_theorem"]), default=10)
    print(f"{'theorem':<{width}}  cases  holds  viol  incon  skip  min_slack")
    for key, s in summary["by_theorem"].items():
        ms = "-" if s["min_slack"] is None else f"{s['min_slack']:.3e}"
        print(f"{key:<{width}}  {s['cases']:5d}  {s['holds']:5d}  {s['violations']:4d}  {s['inconclusive']:5d}  {s['skipped']:4d}  {ms}")
    t = summary["total"]
    print(f"total: {t['cases']} cases, {t['holds']} hold, {t['violations']} violated, "
          f"{t['inconclusive']} inconclusive, {t['skipped']} skipped, {t['quad_evaluations']} integrand evaluations")  # fmt: skip


def _records_csv(records):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(flat_record(rec))
    return buf.getvalue()


def cmd_verify(opts) -> int:
    variants = _variants(opts)
    plan = SweepPlan(
        theorems=opts["theorems"],
        variants=variants,
        cases=opts["cases"],
        seed=opts["seed"],
        rtol=opts["rel_tol"],
        atol=opts["abs_tol"],
        workers=opts["workers"],
    )
    report = sweep(plan)
    if opts["compare_printed"] and "as-printed" not in variants:
        extra = [t for t in opts["theorems"] if t in COMPARE_PRINTED]
        if extra:
            printed = sweep(SweepPlan(**{**vars(plan), "theorems": extra, "variants": ["as-printed"]}))
            report = Report(report.plan, report.outcomes + printed.outcomes, report.wall_time + printed.wall_time, report.created)
            report.plan["compare_printed"] = extra
    _print_summary(report.summary())
    path = _out_path(opts, "verify")
    write_atomic(path, report.to_csv() if opts["format"] == "csv" else report.to_json() + "\n")
    print(f"report written to {path}")
    # printed-form violations requested only for comparison do not fail the run
    counted = [o for o in report.outcomes if o.case.variant in variants]
    return EXIT_VIOLATION if any(o.violated for o in counted) else EXIT_OK


def cmd_falsify(opts) -> int:
    tid, variant = opts["theorem"], opts["variant"]
    cx = falsify(tid, variant, opts["budget"], opts["seed"], opts["rel_tol"], opts["abs_tol"])
    payload = {
        "command": "falsify",
        "theorem_id": tid,
        "variant": variant,
        "budget": opts["budget"],
        "seed": opts["seed"],
        "counterexample": cx.to_dict() if cx else None,
    }
    if cx is None:
        print(f"no counterexample for {tid} [{variant}] within {opts['budget']} cases")
    else:
        rep = cx.report
        print(f"counterexample for {tid} [{variant}] after {cx.shrink_steps} shrink steps:")
        print(f"  {cx.case.describe()}")
        print(f"  lhs={rep.lhs:.12g}  rhs={rep.rhs:.12g}  violation={cx.violation:.6g}")
    path = _out_path(opts, "falsify")
    if opts["format"] == "csv":
        write_atomic(path, _records_csv([_cx_record(cx)] if cx else []))
    else:
        write_atomic(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_VIOLATION if cx else EXIT_OK


def _cx_record(cx):
    rec = cx.case.to_dict()
    rep = cx.report
    rec.update(status="checked", verdict=rep.verdict, lhs=rep.lhs, rhs=rep.rhs, slack=rep.slack,
               tol=rep.tol, violation=rep.violation, quad_evaluations=rep.evaluations, note=rep.note)  # fmt: skip
    return rec


def cmd_tightness(opts) -> int:
    stats = tightness(opts["theorem"], opts["variant"], opts["budget"], opts["seed"], opts["rel_tol"], opts["abs_tol"])
    print(f"{stats.theorem_id} [{stats.variant}]: {stats.checked} checked, {stats.skipped} skipped")
    print(f"  min slack {stats.min_slack:.6e}")
    for q, v in stats.quantiles.items():
        print(f"  q{q:<5g} {v:.6e}")
    if stats.argmin_case is not None:
        print(f"  argmin: {stats.argmin_case.describe()}")
    path = _out_path(opts, "tightness")
    if opts["format"] == "csv":
        rows = ["quantile,slack"] + [f"{q:g},{v!r}" for q, v in stats.quantiles.items()]
        write_atomic(path, "\n".join(rows) + "\n")
    else:
        write_atomic(path, json.dumps(stats.to_dict(), indent=2, sort_keys=True) + "\n")
    return EXIT_VIOLATION if stats.max_violation > 0 else EXIT_OK


def cmd_report(opts) -> int:
    with open(opts["input"], encoding="utf-8") as fh:
        data = json.load(fh)
    if "summary" not in data or "records" not in data:
        raise UsageError(f"{opts['input']} is not a verify report")
    _print_summary(data["summary"])
    if opts["out"] is not None:
        if opts["format"] == "csv":
            write_atomic(opts["out"], _records_csv(data["records"]))
        else:
            write_atomic(opts["out"], json.dumps(data, indent=2, sort_keys=True) + "\n")
        print(f"report written to {opts['out']}")
    return EXIT_VIOLATION if data["summary"]["total"]["violations"] else EXIT_OK


COMMANDS = {"verify": cmd_verify, "falsify": cmd_falsify, "tightness": cmd_tightness, "report": cmd_report}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        opts = resolve_options(args)
        return COMMANDS[args.command](opts)
    except UsageError as exc:
        msg = str(exc)
        print(msg if "error:" in msg else f"convexbounds: error: {msg}", file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as exc:  # --help / --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"convexbounds: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
