"""Command-line interface for measures, experiments, and verification.

Exit codes: 0 all pass, 1 bound or assertion violation, 2 usage error,
3 budget exceeded.  Identical flags and seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence, Union

from .caps import BudgetError
from .families import function_from_spec
from .measures import MEASURES, measure_chain_check, measure_value
from .shrinkage import (
    BoundSpec,
    REPORT_FIELDS,
    ShrinkageReport,
    check_cnf_shrinkage,
    check_dl_shrinkage,
    check_dnf_shrinkage,
    check_dt_shrinkage,
    check_f2,
    check_l2,
    check_lwz_width_bound,
    check_odl,
    check_wodl,
    curve_table,
    exact_expectation,
    mc_expectation,
    report_row,
)
from .verify import SUITES, run_suite, worked_example

Prob = Union[float, Fraction]

_EXACT_CHECKS = {
    "dt": check_dt_shrinkage,
    "dl": check_dl_shrinkage,
    "dnf": check_dnf_shrinkage,
    "cnf": check_cnf_shrinkage,
    "odl": check_odl,
    "wodl": check_wodl,
    "f2": check_f2,
    "l2": check_l2,
}

#: Shifted reporting for the plus-one bound forms.
_SHIFT = {"dnf": 1, "cnf": 1, "f2": 1, "l2": 1}


def _parse_prob(token: str) -> Prob:
    if "/" in token:
        num, den = token.split("/", 1)
        value = Fraction(int(num), int(den))
    else:
        value = float(token)
    if not 0 <= value <= 1:
        raise ValueError(f"p value {token!r} outside [0, 1]")
    return value


def _parse_grid(token: str) -> list[Prob]:
    """One p token: a value, a rational a/b, or a start:end:step range."""
    if ":" in token:
        start_s, end_s, step_s = token.split(":")
        start, end, step = float(start_s), float(end_s), float(step_s)
        if step <= 0:
            raise ValueError(f"step must be positive in {token!r}")
        values = []
        i = 0
        while True:
            v = round(start + i * step, 12)
            if v > end + 1e-12:
                break
            values.append(min(v, 1.0))
            i += 1
        return values
    return [_parse_prob(token)]


def parse_p_values(text: str) -> list[Prob]:
    values: list[Prob] = []
    for token in text.split(","):
        values.extend(_parse_grid(token.strip()))
    if not values:
        raise ValueError("empty p grid")
    return values


def _open_out(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _emit_reports(reports: list[ShrinkageReport], fmt: str, out) -> None:
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(REPORT_FIELDS)
        for r in reports:
            writer.writerow(report_row(r))
    elif fmt == "json":
        records = [dict(zip(REPORT_FIELDS, report_row(r))) for r in reports]
        json.dump(records, out, indent=2)
        out.write("\n")
    else:
        rows = [list(REPORT_FIELDS)] + [report_row(r) for r in reports]
        widths = [max(len(row[i]) for row in rows) for i in range(len(REPORT_FIELDS))]
        for row in rows:
            out.write("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() + "\n")


def cmd_measure(args: argparse.Namespace) -> int:
    names = args.measures.split(",") if args.measures else sorted(MEASURES)
    for name in names:
        if name not in MEASURES:
            raise ValueError(f"unknown measure {name!r}; choose from {sorted(MEASURES)}")
    records = []
    for spec in args.fn:
        f = function_from_spec(spec)
        for name in names:
            result = MEASURES[name](f, with_witness=args.witness)
            record = {
                "function": spec,
                "measure": name,
                "value": result.value,
                "exact": result.exact,
            }
            if args.witness and result.witness is not None:
                record["witness"] = str(result.witness).replace("\n", "; ")
            records.append(record)
    out, close = _open_out(args.out)
    try:
        if args.format == "json":
            json.dump(records, out, indent=2)
            out.write("\n")
        elif args.format == "csv":
            writer = csv.writer(out, lineterminator="\n")
            header = ["function", "measure", "value", "exact", "witness"]
            writer.writerow(header)
            for rec in records:
                writer.writerow([rec.get(k, "") for k in header])
        else:
            for rec in records:
                extra = f"  witness: {rec['witness']}" if "witness" in rec else ""
                out.write(
                    f"{rec['function']}  {rec['measure']} = {rec['value']}"
                    f"{'' if rec['exact'] else ' (upper bound)'}{extra}\n"
                )
    finally:
        if close:
            out.close()
    return 0


def _shrink_report(f, spec: str, measure: str, p: Prob, args) -> ShrinkageReport:
    if args.mc:
        report = mc_expectation(
            f, p, measure, samples=args.samples, seed=args.seed,
            workers=args.workers, function_id=spec,
        )
    else:
        report = exact_expectation(f, p, measure, function_id=spec)
    if args.bound == "none":
        return report
    if args.bound == "lwz":
        if measure != "dl":
            raise ValueError("the width bound applies to the dl measure only")
        if not args.mc:
            return check_lwz_width_bound(f, p, function_id=spec)
        width = measure_value("dl_width", f)
        bound_spec = BoundSpec(f"(4/(1-p))^{width}", width, "lwz_width")
    elif measure in _EXACT_CHECKS:
        if not args.mc:
            return _EXACT_CHECKS[measure](f, p, function_id=spec)
        base = measure_value(measure, f) + _SHIFT.get(measure, 0)
        family = "pow_log2_1p" if measure == "dt" else (
            "pow_gamma_2p" if measure == "l2" else "pow_gamma"
        )
        suffix = "+1" if measure in _SHIFT else ""
        exponent = "log2(1+p)" if measure == "dt" else (
            "gamma(2p)" if measure == "l2" else "gamma(p)"
        )
        bound_spec = BoundSpec(f"({measure}({base - _SHIFT.get(measure, 0)}){suffix})^{exponent}"
                               if suffix else f"{measure}({base})^{exponent}", base, family)
    else:
        return report
    shift = _SHIFT.get(measure, 0)
    bound = bound_spec.value(p)
    mean = report.expectation + shift
    return ShrinkageReport(
        function=report.function,
        measure=f"{measure}+1" if shift else measure,
        p=report.p, method=report.method, expectation=mean,
        stderr=report.stderr, bound_name=bound_spec.name, bound=bound,
        satisfied=mean <= bound + 1e-9, samples=report.samples, seed=report.seed,
    )


def cmd_shrink(args: argparse.Namespace) -> int:
    probs = parse_p_values(args.p)
    reports = []
    for spec in args.fn:
        f = function_from_spec(spec)
        for p in probs:
            reports.append(_shrink_report(f, spec, args.measure, p, args))
    out, close = _open_out(args.out)
    try:
        _emit_reports(reports, args.format, out)
    finally:
        if close:
            out.close()
    checked = [r for r in reports if r.satisfied is not None]
    violated = [r for r in checked if not r.satisfied]
    ties = sum(
        1 for r in checked if r.bound is not None and abs(r.expectation - r.bound) <= 1e-9
    )
    if checked:
        print(
            f"{len(checked) - len(violated)}/{len(checked)} satisfied"
            f" ({ties} with equality)",
            file=sys.stderr,
        )
    return 1 if violated else 0


def cmd_verify(args: argparse.Namespace) -> int:
    result = run_suite(args.suite, seed=args.seed, workers=args.workers)
    for line in result.lines:
        status = "PASS" if line.passed else "FAIL"
        detail = f"  [{line.detail}]" if line.detail else ""
        print(f"{status}  {result.suite}/{line.name}{detail}")
    failed = [line for line in result.lines if not line.passed]
    print(
        f"suite {result.suite}: {len(result.lines) - len(failed)}/{len(result.lines)} "
        f"checks passed in {result.elapsed:.1f}s"
    )
    return 0 if result.passed else 1


def cmd_paper_box(args: argparse.Namespace) -> int:
    example = worked_example()
    print(f"L = {'; '.join(f'({c}, b{b})' for c, b in example.dlist.entries)}")
    print(f"rho1 = {example.rho1}  (x1 -> 1)")
    print(f"rho2 = {example.rho2}  (x1 -> 1, x2 -> 1)")
    print(f"U(L, rho1) = {{{', '.join(map(str, example.useful1))}}}")
    print(f"L|rho1 = {example.restricted1_text}")
    print(f"U(L, rho2) = {{{', '.join(map(str, example.useful2))}}}")
    print(f"L|rho2 = {example.restricted2_text}")
    print(f"rho1 contributes to mu_{example.mu_class1[0]}: {example.mu_class1[1]}")
    print(f"rho2 contributes to mu_{example.mu_class2[0]}: {example.mu_class2[1]}")
    for line in example.checks:
        print(f"{'PASS' if line.passed else 'FAIL'}  {line.name}  [{line.detail}]")
    return 0 if example.passed else 1


def cmd_curves(args: argparse.Namespace) -> int:
    grid = _parse_grid(args.grid)
    rows = curve_table(grid)
    out, close = _open_out(args.out)
    try:
        out.write("p gamma log2_1p\n")
        for p, g, lo in rows:
            out.write(f"{p:.6f} {g:.12f} {lo:.12f}\n")
    finally:
        if close:
            out.close()
    return 0


def cmd_chain(args: argparse.Namespace) -> int:
    bad = 0
    for spec in args.fn:
        f = function_from_spec(spec)
        report = measure_chain_check(f, spec)
        values = " ".join(f"{k}={v}" for k, v in sorted(report.values.items()))
        print(f"{spec}: {values}")
        for leg in report.legs:
            if not leg.ok:
                print(f"  VIOLATED {leg.name}: {leg.lhs} > {leg.rhs}")
                bad += 1
    print(f"{len(args.fn)} functions checked, {bad} violations")
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shrinklab",
        description="Exact desk-scale verification of decision-list and DNF "
        "shrinkage under p-random restrictions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("csv", "json", "table"), default="table")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    m = sub.add_parser("measure", help="exact complexity measures of functions")
    m.add_argument("--fn", action="append", required=True,
                   help="family spec (parity:3, rotree:2, and:4, or:4, tribes:2,2, "
                        "random:4,2,7) or literal 'n=2 outputs=0110'; repeatable")
    m.add_argument("--measures", default=None,
                   help=f"comma list from {','.join(sorted(MEASURES))} (default all)")
    m.add_argument("--witness", action="store_true", help="include optimal witnesses")
    add_common(m)
    m.set_defaults(fn_handler=cmd_measure)

    s = sub.add_parser("shrink", help="expected measure under R_p vs its bound")
    s.add_argument("--fn", action="append", required=True)
    s.add_argument("--measure", required=True, choices=sorted(MEASURES))
    s.add_argument("--p", required=True,
                   help="grid start:end:step, value, rational a/b, or comma list")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mc", action="store_false", default=False,
                      help="full 3^n enumeration (default)")
    mode.add_argument("--mc", dest="mc", action="store_true",
                      help="seeded Monte Carlo estimate")
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--bound", choices=("auto", "lwz", "none"), default="auto")
    add_common(s)
    s.set_defaults(fn_handler=cmd_shrink)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite", choices=["all", *SUITES])
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(fn_handler=cmd_verify)

    b = sub.add_parser("paper-box", help="reproduce the worked four-clause example")
    b.set_defaults(fn_handler=cmd_paper_box)

    c = sub.add_parser("curves", help="tabulate gamma(p) against log2(1+p)")
    c.add_argument("--grid", default="0:1:0.01")
    c.add_argument("--out", default=None)
    c.set_defaults(fn_handler=cmd_curves)

    ch = sub.add_parser("chain", help="check the measure inequality chains")
    ch.add_argument("--fn", action="append", required=True)
    ch.set_defaults(fn_handler=cmd_chain)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn_handler(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
