"""The expansion pipeline for I(n) = sqrt(n) int_0^inf |sin t / t|^n dt.

On [0, sqrt(6n)] the integrand is written as exp(-t^2/6) times

    [exp(t^2 / 6n) T_k(t / sqrt n)]^n ,

where T_k is the degree-2k Maclaurin partial sum of sinc.  The bracketed
factor equals 1 + sum_{j>=2} a_j t^{2j}/n^j with a_j the Cauchy-product
coefficients of the exponential against the partial sum; the t^2 terms
cancel by construction, which is what makes the collected power start at
1/n^1.  Collecting the n-th power by powers of 1/n (series module) and
integrating row by row against the Gaussian weight,

    int_0^inf exp(-t^2/6) t^{2w} dt = 3^w (2w-1)!! * sqrt(3 pi / 2),

turns row i into the exact coefficient c_i of 1/n^i, reported in units of
sqrt(3 pi / 2).  The coefficients are independent of k as long as
k >= m + 1, which the pipeline enforces and the tests exercise.

The module also carries the degree-28 bookkeeping table (rows through
1/n^13, exponents through t^28) against which the shipped fixture file is
regression-checked, with an erratum ledger for the entries where fixture
and recomputation differ; see data/errata.json.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, Mapping

import mpmath as mp

from .rationals import Rat, double_factorial, parse_rational
from .series import EvenPoly, InvNSeries, collect_binomial_rows, nseries_pow_binomial

__all__ = [
    "SincExpansion",
    "TailBoundSinc",
    "BracketSample",
    "SINC_UNIT",
    "sinc_partial_sum",
    "sinc_aj",
    "gaussian_moment_ratio",
    "sinc_expansion",
    "sinc_tail_bound",
    "cutoff_tail_bound",
    "appendix_table",
    "load_appendix_fixture",
    "appendix_mismatches",
    "load_errata",
    "bracketing_check",
]

SINC_UNIT = "sqrt(3*pi/2)"

APPENDIX_MAX_ROW = 13   # deepest 1/n power in the degree-28 table
APPENDIX_MAX_W = 14     # half the top t-exponent (t^28)
APPENDIX_K = 8          # truncation index the order-7 pipeline pins


def sinc_partial_sum(k: int) -> EvenPoly:
    """T_k(t) = sum_{j=0}^k (-1)^j t^{2j} / (2j+1)!."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return EvenPoly({2 * j: Fraction((-1) ** j, math.factorial(2 * j + 1)) for j in range(k + 1)})


def sinc_aj(j: int, k: int) -> Fraction:
    """Coefficient of t^{2j} in exp(t^2/6) * T_k(t).

    a_0 = 1 and a_1 = 0 (the t^2/6 terms cancel); a_2 = -1/180 starts the
    genuine series.  The partial-sum index k caps the sinc-side factor.
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    if k < 1:
        raise ValueError("k must be at least 1")
    total = Fraction(0)
    for i in range(0, min(j, k) + 1):
        exp_part = Fraction(1, math.factorial(i) * 6**i)
        sinc_part = Fraction((-1) ** (j - i), math.factorial(2 * (j - i) + 1))
        total += exp_part * sinc_part
    return total


def gaussian_moment_ratio(j: int) -> Fraction:
    """int_0^inf e^{-t^2/6} t^{2j} dt divided by the j = 0 integral."""
    return Fraction(3**j) * double_factorial(j)


@dataclass(frozen=True)
class SincExpansion:
    """Exact expansion I(n) ~ unit * sum_j coeffs[j] / n^j."""

    m: int
    k: int
    coeffs: tuple[Fraction, ...]
    unit: str = SINC_UNIT

    def partial_sum_mpf(self, n) -> mp.mpf:
        """sum_j c_j / n^j at current mpmath precision (unit not applied)."""
        nn = mp.mpf(n)
        return mp.fsum(mp.mpf(c.numerator) / c.denominator / nn**j for j, c in enumerate(self.coeffs))


def sinc_expansion(m: int, k: int | None = None) -> SincExpansion:
    """Exact c_0..c_m in units of sqrt(3 pi / 2).

    k defaults to m + 1, the smallest truncation index for which the
    partial sums bracket sinc on the relevant range; any k >= m + 1 gives
    identical coefficients.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if k is None:
        k = m + 1
    if k <= m:
        raise ValueError("truncation too short: k must be at least m + 1")
    a = {j: sinc_aj(j, k) for j in range(2, max(2 * m, 2) + 1)}
    series = nseries_pow_binomial(a, m)
    coeffs = []
    for i in range(m + 1):
        total = Fraction(0)
        for exp, v in series.row(i).items():
            total += v * gaussian_moment_ratio(exp // 2)
        coeffs.append(total)
    return SincExpansion(m=m, k=k, coeffs=tuple(coeffs))


@dataclass(frozen=True)
class TailBoundSinc:
    """Bound sqrt(6n) 6^{-n/2} / (n-1) on sqrt(n) int_{sqrt 6}^inf |sinc|^n."""

    n: int
    bound: mp.mpf


def sinc_tail_bound(n: int, digits: int = 30) -> TailBoundSinc:
    """Evaluate the sqrt(6)-cutoff tail bound at the requested precision."""
    if n < 2:
        raise ValueError("n must be at least 2")
    with mp.workdps(digits + 10):
        val = mp.sqrt(6 * n) * mp.power(6, mp.mpf(-n) / 2) / (n - 1)
        return TailBoundSinc(n=n, bound=+val)


def cutoff_tail_bound(n: int, cutoff) -> mp.mpf:
    """Bound sqrt(n) A^{1-n} / (n-1) on the integral beyond A >= 1.

    Uses |sin t / t|^n <= t^{-n}; same derivation as the sqrt(6) bound but
    at an arbitrary cutoff, which the quadrature module needs.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    A = mp.mpf(cutoff)
    if A < 1:
        raise ValueError("cutoff must be at least 1")
    return mp.sqrt(n) * A ** (1 - n) / (n - 1)


def appendix_table(k: int = APPENDIX_K) -> InvNSeries:
    """The degree-28 bookkeeping table: rows 0..13, exponents through t^28.

    Rows 0..7 are the asymptotic coefficients of the order-7 pipeline and
    are independent of k >= 8.  Rows 8..13 are bookkeeping only (the
    order-7 truncation is not valid at those orders) and do depend on k;
    the default matches the pipeline's own truncation index.
    """
    if k < APPENDIX_K:
        raise ValueError(f"k must be at least {APPENDIX_K}")
    a = {j: sinc_aj(j, k) for j in range(2, APPENDIX_MAX_W + 1)}
    raw = collect_binomial_rows(a, max_row=APPENDIX_MAX_ROW, max_w=APPENDIX_MAX_W)
    return InvNSeries([EvenPoly({2 * w: v for w, v in r.items()}) for r in raw])


def _data_text(name: str) -> str:
    return resources.files("ballint").joinpath("data", name).read_text(encoding="utf-8")


def load_appendix_fixture(text: str | None = None) -> dict[tuple[int, int], Fraction]:
    """Parse the fixture table of (row, exponent, rational) triples.

    One triple per line, whitespace separated; blank lines and lines
    starting with '#' are ignored.  Malformed rationals, odd exponents,
    and duplicate (row, exponent) keys are rejected.
    """
    if text is None:
        text = _data_text("appendix_a.txt")
    table: dict[tuple[int, int], Fraction] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 3:
            raise ValueError(f"fixture line {lineno}: expected 3 fields, got {len(parts)}")
        try:
            row = int(parts[0])
            exp = int(parts[1])
        except ValueError:
            raise ValueError(f"fixture line {lineno}: bad row/exponent") from None
        if row < 0 or exp < 0 or exp % 2 != 0:
            raise ValueError(f"fixture line {lineno}: row/exponent out of range")
        try:
            value = parse_rational(parts[2])
        except ValueError as e:
            raise ValueError(f"fixture line {lineno}: {e}") from None
        key = (row, exp)
        if key in table:
            raise ValueError(f"fixture line {lineno}: duplicate entry for row {row}, t^{exp}")
        table[key] = value
    if not table:
        raise ValueError("fixture is empty")
    return table


@dataclass(frozen=True)
class AppendixMismatch:
    row: int
    exponent: int
    engine: Fraction
    fixture: Fraction


def appendix_mismatches(table: InvNSeries, fixture: Mapping[tuple[int, int], Fraction]) -> list[AppendixMismatch]:
    """Entries where the recomputed table and the fixture disagree.

    The comparison universe is the union of both monomial sets restricted
    to the fixture's shape (rows <= 13, exponents <= 28); a value missing
    on either side counts as 0 there.
    """
    engine: dict[tuple[int, int], Fraction] = {}
    for i, exp, v in table.monomials():
        if i <= APPENDIX_MAX_ROW and exp <= 2 * APPENDIX_MAX_W:
            engine[(i, exp)] = v
    out = []
    for key in sorted(set(engine) | set(fixture)):
        ev = engine.get(key, Fraction(0))
        fv = fixture.get(key, Fraction(0))
        if ev != fv:
            out.append(AppendixMismatch(row=key[0], exponent=key[1], engine=ev, fixture=fv))
    return out


def load_errata() -> dict:
    """The erratum ledger shipped with the package (data/errata.json)."""
    return json.loads(_data_text("errata.json"))


@dataclass(frozen=True)
class BracketSample:
    t: float
    lower: mp.mpf     # T_k(t)
    value: mp.mpf     # sinc t
    upper: mp.mpf     # T_{k+1}(t)
    ok: bool


def bracketing_check(k: int, samples: Iterable[float], digits: int = 30) -> list[BracketSample]:
    """Check 0 <= T_k(t) <= sin t / t <= T_{k+1}(t) at points of (0, sqrt 6).

    Valid for odd k; sinc is evaluated through the quadrature module's
    normalized Bessel series at nu = 1/2, which reduces to sin t / t.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be odd and positive")
    from .bessel import Nu
    from .quadrature import Precision, bessel_j_normalized

    lower_poly = sinc_partial_sum(k)
    upper_poly = sinc_partial_sum(k + 1)
    half = Nu(Fraction(1, 2))
    prec = Precision(decimal_digits=max(15, digits))
    out = []
    with mp.workdps(prec.working_dps):
        for t in samples:
            tt = mp.mpf(t)
            if not (0 < tt * tt < 6):
                raise ValueError(f"sample {t} outside (0, sqrt 6)")
            lo = lower_poly.eval_mpf(tt)
            hi = upper_poly.eval_mpf(tt)
            val = bessel_j_normalized(half, tt, prec).value
            ok = bool(0 <= lo <= val <= hi)
            out.append(BracketSample(t=float(t), lower=+lo, value=+val, upper=+hi, ok=ok))
    return out
