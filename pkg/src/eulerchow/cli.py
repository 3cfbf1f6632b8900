"""Command-line front end.

    eulerchow run SCRIPT [--format json|csv]
    eulerchow catalog {pn,mcdonald,ruled,scroll3} [params] --order N [--functional a,b,...]
    eulerchow selftest

Exit codes: 0 success, 1 a comparison found differences (or a selftest
criterion failed), 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Iterable, TextIO

from . import catalog, dsl, series
from .errors import EulerChowError
from .grading import GradingFunctional, TruncationSpec, auto_functional
from .series import ComparisonReport, TruncatedSeries


def series_record(ts: TruncatedSeries) -> dict:
    return {
        "kind": "series",
        "rank": ts.rank,
        "functional": list(ts.spec.functional.weights),
        "order": ts.spec.bound,
        "complete": ts.complete,
        "coefficients": [{"deg": list(d), "c": str(c)} for d, c in ts.items()],
        "uncertified": None if ts.uncertified is None else [list(d) for d in sorted(ts.uncertified)],
    }


def compare_record(report: ComparisonReport, spec: TruncationSpec) -> dict:
    return {
        "kind": "compare",
        "equal": report.equal,
        "diffs": [{"deg": list(d), "left": str(a), "right": str(b)} for d, a, b in report.diffs],
        "functional": list(spec.functional.weights),
        "order": spec.bound,
        "left_complete": report.left_complete,
        "right_complete": report.right_complete,
        "skipped": [list(d) for d in report.skipped],
    }


def _write_csv(record: dict, out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    if record["kind"] == "series":
        names = [f"degree{i}" for i in range(record["rank"])]
        writer.writerow(names + ["coefficient"])
        for entry in record["coefficients"]:
            writer.writerow(entry["deg"] + [entry["c"]])
    else:
        names = [f"degree{i}" for i in range(len(record["functional"]))]
        writer.writerow(names + ["left", "right"])
        for entry in record["diffs"]:
            writer.writerow(entry["deg"] + [entry["left"], entry["right"]])


def write_records(records: Iterable[dict], out: TextIO, fmt: str) -> None:
    """JSON: one record per line.  CSV: one table per record, blank-line separated."""
    for i, record in enumerate(records):
        if fmt == "json":
            out.write(json.dumps(record) + "\n")
        else:
            if i:
                out.write("\n")
            _write_csv(record, out)


def write_results(results: Iterable[dsl.CommandResult], out: TextIO, fmt: str) -> bool:
    """Write every command result; return True iff all comparisons were equal."""
    all_equal = True
    records = []
    for r in results:
        if r.kind == "series":
            records.append(series_record(r.series))
        else:
            all_equal &= r.report.equal
            records.append(compare_record(r.report, r.spec))
    write_records(records, out, fmt)
    return all_equal


def cmd_run(path: str, fmt: str, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        results = dsl.evaluate(dsl.parse(text))
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except EulerChowError as exc:
        span = getattr(exc, "span", None)
        name = type(exc).__name__
        message = exc.message if isinstance(exc, dsl.ScriptError) else str(exc)
        err.write(f"{path}:{span}: {name}: {message}\n" if span else f"{path}: {name}: {message}\n")
        return 2
    return 0 if write_results(results, out, fmt) else 1


def _parse_weights(text: str | None) -> GradingFunctional | None:
    if text is None:
        return None
    return GradingFunctional(int(x) for x in text.split(","))


def catalog_form(entry: str, args: argparse.Namespace) -> series.ProductForm:
    def need(*names):
        missing = [n for n in names if getattr(args, n) is None]
        if missing:
            raise ValueError(f"catalog {entry} needs --{' --'.join(missing)}")

    if entry == "pn":
        need("n", "p")
        return catalog.euler_chow_pn(args.n, args.p)
    if entry == "mcdonald":
        need("chi")
        return catalog.mcdonald_e0(args.chi)
    if entry == "ruled":
        need("g", "e", "p")
        return catalog.ruled_series(catalog.RuledSurfaceSpec(args.g, args.e), args.p)
    if entry == "scroll3":
        need("n", "h", "p")
        sign = 1 if args.sign in ("+", "+1") else -1
        return catalog.scroll3_printed_formula(args.n, args.h, args.p, sign)
    raise ValueError(f"unknown catalog entry {entry!r}")


def cmd_catalog(args: argparse.Namespace, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        form = catalog_form(args.entry, args)
        functional = _parse_weights(args.functional)
        if functional is None:
            functional = auto_functional(form.monomials) if form.factors else GradingFunctional.ones(form.rank)
        ts = series.expand(form, TruncationSpec(functional, args.order))
    except (EulerChowError, ValueError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    write_records([series_record(ts)], out, args.format)
    return 0


def cmd_selftest(out: TextIO | None = None) -> int:
    from .selftest import run_selftest

    return run_selftest(out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eulerchow", description="Exact Euler-Chow series engine")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate a script")
    run.add_argument("script")
    run.add_argument("--format", choices=["json", "csv"], default="json")

    cat = sub.add_parser("catalog", help="expand a catalog series")
    cat.add_argument("entry", choices=["pn", "mcdonald", "ruled", "scroll3"])
    for name in ("n", "p", "g", "e", "h", "chi"):
        cat.add_argument(f"--{name}", type=int)
    cat.add_argument("--sign", choices=["+", "-", "+1", "-1"], default="-",
                     help="sign of h in the mixed scroll monomials (default: -)")
    cat.add_argument("--order", type=int, required=True)
    cat.add_argument("--functional", help="comma-separated positive weights")
    cat.add_argument("--format", choices=["json", "csv"], default="json")

    sub.add_parser("selftest", help="run the acceptance checks")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args.script, args.format)
    if args.command == "catalog":
        return cmd_catalog(args)
    return cmd_selftest()


if __name__ == "__main__":
    sys.exit(main())
