"""Output records and renderers for the command-line surface.

Every machine-readable artifact flows through the two record types here:
coefficient tables (exact rational plus a decimal rendering in the
table's unit) and verification case rows.  The JSON field names are a
stable contract: kind, pipeline, nu, order, unit,
coefficients[{j, rational, decimal}], value, abs_err_bound,
reports[{id, expected, computed, tolerance, status, provenance}].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .bessel import Nu, c0_value
from .rationals import format_rational, parse_rational

__all__ = [
    "CoeffRecord",
    "VerifyReport",
    "sinc_coeff_records",
    "bessel_coeff_records",
    "records_to_text",
    "records_to_json",
    "records_to_csv",
    "estimate_to_text",
    "estimate_to_json",
    "reports_to_text",
    "reports_to_json",
]

SINC_UNIT_TEXT = "sqrt(3*pi/2)"


@dataclass(frozen=True)
class CoeffRecord:
    """One expansion coefficient: exact rational plus decimal-in-unit."""

    pipeline: str            # "sinc" or "bessel"
    nu: Fraction | None
    j: int
    rational: str            # canonical p/q
    decimal: str             # rational x unit value, at the requested digits
    unit: str                # "sqrt(3*pi/2)" or "c0(nu)"

    def __post_init__(self):
        # canonical-form guard: the string must round-trip exactly
        parse_rational(self.rational)


@dataclass(frozen=True)
class VerifyReport:
    """One verification case with provenance and outcome."""

    id: str
    expected: str
    computed: str
    tolerance: str
    status: str              # pass | fail | erratum
    provenance: str          # paper | derived | trivial
    notes: str = ""

    def __post_init__(self):
        if self.status not in ("pass", "fail", "erratum"):
            raise ValueError(f"bad status {self.status!r}")
        if self.provenance not in ("paper", "derived", "trivial"):
            raise ValueError(f"bad provenance {self.provenance!r}")


def _decimal_in_unit(q: Fraction, unit_value: mp.mpf, digits: int) -> str:
    with mp.workdps(digits + 10):
        val = mp.mpf(q.numerator) / q.denominator * unit_value
        return mp.nstr(val, digits, strip_zeros=False)


def sinc_coeff_records(expansion, digits: int = 30) -> list[CoeffRecord]:
    """Records for a SincExpansion, decimals in units of sqrt(3 pi/2)."""
    with mp.workdps(digits + 10):
        unit_value = mp.sqrt(3 * mp.pi / 2)
        return [
            CoeffRecord(
                pipeline="sinc",
                nu=None,
                j=j,
                rational=format_rational(c),
                decimal=_decimal_in_unit(c, unit_value, digits),
                unit=SINC_UNIT_TEXT,
            )
            for j, c in enumerate(expansion.coeffs)
        ]


def bessel_coeff_records(expansion, digits: int = 30) -> list[CoeffRecord]:
    """Records for a BesselExpansion, decimals in units of c0(nu)."""
    with mp.workdps(digits + 10):
        unit_value = c0_value(expansion.nu, digits)
        return [
            CoeffRecord(
                pipeline="bessel",
                nu=expansion.nu.value,
                j=j,
                rational=format_rational(g),
                decimal=_decimal_in_unit(g, unit_value, digits),
                unit=f"c0({expansion.nu})",
            )
            for j, g in enumerate(expansion.gamma_coeffs)
        ]


def records_to_text(records: list[CoeffRecord], header: str) -> str:
    width = max((len(r.rational) for r in records), default=8)
    lines = [header]
    for r in records:
        lines.append(f"  j={r.j:<3d} {r.rational:<{width}}  {r.decimal}")
    return "\n".join(lines)


def records_to_json(records: list[CoeffRecord], order: int) -> str:
    if not records:
        raise ValueError("no records")
    head = records[0]
    doc = {
        "kind": "coefficients",
        "pipeline": head.pipeline,
        "nu": format_rational(head.nu) if head.nu is not None else None,
        "order": order,
        "unit": head.unit,
        "coefficients": [
            {"j": r.j, "rational": r.rational, "decimal": r.decimal} for r in records
        ],
    }
    return json.dumps(doc, indent=2)


def records_to_csv(records: list[CoeffRecord]) -> str:
    lines = ["j,rational,decimal"]
    for r in records:
        lines.append(f"{r.j},{r.rational},{r.decimal}")
    return "\n".join(lines)


def estimate_to_text(est, label: str, digits: int) -> str:
    with mp.workdps(digits + 10):
        return "\n".join([
            label,
            f"  value         = {mp.nstr(est.value, digits, strip_zeros=False)}",
            f"  abs_err_bound = {mp.nstr(est.abs_err_bound, 6)}",
            f"  cutoff        = {mp.nstr(est.cutoff_used, 10)}",
            f"  pieces        = {est.pieces}",
        ])


def estimate_to_json(est, pipeline: str, nu: Fraction | None, n: int, digits: int) -> str:
    with mp.workdps(digits + 10):
        doc = {
            "kind": "estimate",
            "pipeline": pipeline,
            "nu": format_rational(nu) if nu is not None else None,
            "n": n,
            "value": mp.nstr(est.value, digits, strip_zeros=False),
            "abs_err_bound": mp.nstr(est.abs_err_bound, 6),
            "cutoff": mp.nstr(est.cutoff_used, 10),
            "pieces": est.pieces,
        }
    return json.dumps(doc, indent=2)


def reports_to_text(reports: list[VerifyReport], suite: str) -> str:
    lines = [f"verify {suite}"]
    for r in reports:
        lines.append(f"  [{r.status:<7}] {r.id} ({r.provenance})")
        lines.append(f"            expected {r.expected}")
        lines.append(f"            computed {r.computed}  tol {r.tolerance}")
        if r.notes:
            lines.append(f"            note: {r.notes}")
    counts = {s: sum(1 for r in reports if r.status == s) for s in ("pass", "fail", "erratum")}
    lines.append(f"  {counts['pass']} pass, {counts['fail']} fail, {counts['erratum']} erratum")
    return "\n".join(lines)


def reports_to_json(reports: list[VerifyReport], suite: str) -> str:
    doc = {
        "kind": "verify",
        "suite": suite,
        "reports": [
            {
                "id": r.id,
                "expected": r.expected,
                "computed": r.computed,
                "tolerance": r.tolerance,
                "status": r.status,
                "provenance": r.provenance,
                "notes": r.notes,
            }
            for r in reports
        ],
    }
    return json.dumps(doc, indent=2)
