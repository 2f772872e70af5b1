"""Command line surface: coefficient tables, quadrature, verification.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 precision
failure (the message then carries the best estimate reached).
"""

from __future__ import annotations

import argparse
import json
import sys

import mpmath as mp

from .bessel import BesselExpansion, Nu, bessel_expansion, c0_descriptor
from .cache import load_coeffs, store_coeffs
from .quadrature import Precision, PrecisionFailure, bessel_integral, sinc_integral
from .rationals import format_rational, parse_rational
from .records import (
    bessel_coeff_records,
    estimate_to_json,
    estimate_to_text,
    records_to_csv,
    records_to_json,
    records_to_text,
    reports_to_json,
    reports_to_text,
    sinc_coeff_records,
)
from .sinc import (
    SINC_UNIT,
    SincExpansion,
    appendix_mismatches,
    appendix_table,
    load_appendix_fixture,
    load_errata,
    sinc_expansion,
)
from .verify import SUITES, run_suite, suite_exit_code

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3

SINC_ORDER_CEILING = 12
BESSEL_ORDER_CEILING = 8


def _usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _parse_nu(text: str) -> Nu:
    return Nu(parse_rational(text))


def _precision(digits: int, max_refine: int | None = None) -> Precision:
    kwargs = {"decimal_digits": digits + 10}
    if max_refine is not None:
        kwargs["max_refinements"] = max_refine
    return Precision(**kwargs)


def _emit_records(records, fmt: str, header: str, order: int) -> None:
    if fmt == "json":
        print(records_to_json(records, order))
    elif fmt == "csv":
        print(records_to_csv(records))
    else:
        print(records_to_text(records, header))


def cmd_sinc_coeffs(args) -> int:
    m = args.order
    if not 0 <= m <= SINC_ORDER_CEILING:
        return _usage(f"--order must lie in 0..{SINC_ORDER_CEILING}")
    k = args.trunc if args.trunc is not None else m + 1
    if k <= m:
        return _usage(f"--trunc must exceed the order (got {k} for order {m})")
    coeffs = None if args.no_cache else load_coeffs("sinc", None, m, k)
    if coeffs is not None:
        expansion = SincExpansion(m=m, k=k, coeffs=tuple(coeffs), unit=SINC_UNIT)
    else:
        expansion = sinc_expansion(m, k)
        if not args.no_cache:
            store_coeffs("sinc", None, m, k, expansion.coeffs)
    records = sinc_coeff_records(expansion, digits=args.digits)
    _emit_records(records, args.format, f"sinc coefficients, order {m}, unit {SINC_UNIT}", m)
    return EXIT_OK


def cmd_bessel_coeffs(args) -> int:
    try:
        nu = _parse_nu(args.nu)
    except ValueError as exc:
        return _usage(str(exc))
    m = args.order
    if not 0 <= m <= BESSEL_ORDER_CEILING:
        return _usage(f"--order must lie in 0..{BESSEL_ORDER_CEILING}")
    k = m + 1
    coeffs = None if args.no_cache else load_coeffs("bessel", nu.value, m, k)
    if coeffs is not None:
        expansion = BesselExpansion(nu=nu, m=m, k=k, gamma_coeffs=tuple(coeffs),
                                    c0_descriptor=c0_descriptor(nu))
    else:
        expansion = bessel_expansion(nu, m, k)
        if not args.no_cache:
            store_coeffs("bessel", nu.value, m, k, expansion.gamma_coeffs)
    records = bessel_coeff_records(expansion, digits=args.digits)
    _emit_records(records, args.format, f"bessel coefficients, nu {nu}, order {m}, unit c0(nu)", m)
    return EXIT_OK


def cmd_eval(args) -> int:
    if args.n < 2:
        return _usage("--n must be at least 2")
    if args.pipeline == "sinc" and args.nu is not None:
        return _usage("--nu applies to the bessel pipeline only")
    if args.pipeline == "bessel" and args.nu is None:
        return _usage("the bessel pipeline needs --nu")
    if args.format == "csv":
        return _usage("csv output applies to coefficient tables only")
    try:
        prec = _precision(args.digits, args.max_refine)
    except ValueError as exc:
        return _usage(str(exc))
    try:
        if args.pipeline == "sinc":
            nu_frac = None
            est = sinc_integral(args.n, prec)
            label = f"sinc integral, n = {args.n}"
        else:
            nu = _parse_nu(args.nu)
            nu_frac = nu.value
            est = bessel_integral(nu, args.n, prec, cutoff_mult=args.cutoff_mult)
            label = f"bessel integral, nu = {nu}, n = {args.n}"
    except ValueError as exc:
        return _usage(str(exc))
    except PrecisionFailure as exc:
        with mp.workdps(args.digits + 10):
            best = mp.nstr(exc.estimate.value, args.digits) if exc.estimate else "unavailable"
        print(f"precision failure: {exc}; best estimate {best}", file=sys.stderr)
        return EXIT_PRECISION
    if args.format == "json":
        print(estimate_to_json(est, args.pipeline, nu_frac, args.n, args.digits))
    else:
        print(estimate_to_text(est, label, args.digits))
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = run_suite(args.suite)
    print(reports_to_text(reports, args.suite))
    payload = reports_to_json(reports, args.suite)
    try:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    except OSError as exc:
        print(f"error: could not write report file {args.report}: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    return suite_exit_code(reports)


def cmd_appendix_check(args) -> int:
    fixture = load_appendix_fixture()
    table = appendix_table(k=8)
    mismatches = appendix_mismatches(table, fixture)
    ledger = {(e["row"], e["exponent"]): e for e in load_errata()["table"]}
    rows = []
    clean = True
    for mism in mismatches:
        entry = ledger.get((mism.row, mism.exponent))
        status = entry["classification"] if entry else "UNLEDGERED"
        if entry is None:
            clean = False
        rows.append({
            "row": mism.row,
            "exponent": mism.exponent,
            "fixture": format_rational(mism.fixture),
            "recomputed": format_rational(mism.engine),
            "status": status,
        })
    stale = sorted(set(ledger) - {(m.row, m.exponent) for m in mismatches})
    if stale:
        clean = False
    if args.format == "json":
        print(json.dumps({
            "kind": "appendix-check",
            "monomials": len(fixture),
            "mismatches": rows,
            "stale_ledger_entries": [list(s) for s in stale],
        }, indent=2))
    else:
        print(f"fixture monomials: {len(fixture)}, mismatching: {len(rows)}")
        for r in rows:
            print(f"  row {r['row']:2d} t^{r['exponent']:<2d} fixture {r['fixture']} "
                  f"recomputed {r['recomputed']} [{r['status']}]")
        for s in stale:
            print(f"  stale ledger entry {s}")
    return EXIT_OK if clean else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ballint",
        description="Exact asymptotic-expansion tables and high-precision "
                    "quadrature for powered sinc and Bessel integrals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sinc-coeffs", help="exact sinc expansion coefficients")
    p.add_argument("--order", type=int, required=True, help=f"expansion order, 0..{SINC_ORDER_CEILING}")
    p.add_argument("--trunc", type=int, default=None, help="truncation index (default order+1)")
    p.add_argument("--digits", type=int, default=30, help="decimal digits in the rendered column")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--no-cache", action="store_true", help="bypass the coefficient cache")
    p.set_defaults(func=cmd_sinc_coeffs)

    p = sub.add_parser("bessel-coeffs", help="exact Bessel expansion coefficients")
    p.add_argument("--nu", required=True, help="order as p/q, at least 1/2")
    p.add_argument("--order", type=int, required=True, help=f"expansion order, 0..{BESSEL_ORDER_CEILING}")
    p.add_argument("--digits", type=int, default=30)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_bessel_coeffs)

    p = sub.add_parser("eval", help="evaluate an integral by verified quadrature")
    p.add_argument("pipeline", choices=("sinc", "bessel"))
    p.add_argument("--n", type=int, required=True, help="power, at least 2")
    p.add_argument("--nu", default=None, help="Bessel order as p/q")
    p.add_argument("--digits", type=int, default=20, help="target decimal digits")
    p.add_argument("--cutoff-mult", type=float, default=24, help="head length in envelope units")
    p.add_argument("--max-refine", type=int, default=None, help="order-doubling budget per panel set")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=tuple(sorted(SUITES)))
    p.add_argument("--report", default="ballint-verify-report.json",
                   help="path for the JSON report file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("appendix-check", help="compare the degree-28 table against the fixture")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_appendix_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
