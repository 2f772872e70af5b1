"""Even polynomials and truncated 1/n series with exact coefficients.

EvenPoly is a sparse polynomial in t containing only even powers; it houses
Maclaurin partial sums and the per-row polynomials of collected binomial
expansions.  InvNSeries is the truncated expansion sum_i row_i(t) / n^i.

nseries_pow_binomial collects

    [1 + sum_{j>=2} a_j t^{2j} / n^j]^n

by powers of 1/n.  The binomial term binom(n, l) S^l contributes through the
expansion of the falling factorial n(n-1)...(n-l+1)/l! as a polynomial in n:
a monomial t^{2w} produced by S^l, paired with the n^s coefficient of that
polynomial, lands in row i = w - s.  Since s <= l <= floor(w / 2), every
monomial satisfies w <= 2i, i.e. degree(row i) <= 4i, and row 0 is exactly 1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

import mpmath as mp

from .rationals import Rat, format_rational

__all__ = ["EvenPoly", "InvNSeries", "poly_mul_trunc", "nseries_pow_binomial", "collect_binomial_rows"]


class EvenPoly:
    """Sparse exact polynomial in t with even exponents only.

    Zero coefficients are never stored, so structural equality is value
    equality.  Instances are immutable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Rat] | None = None):
        c: dict[int, Fraction] = {}
        for exp, val in (coeffs or {}).items():
            exp = int(exp)
            if exp < 0 or exp % 2 != 0:
                raise ValueError(f"exponent {exp} is not a nonnegative even integer")
            v = Fraction(val)
            if v:
                c[exp] = v
        self._c = c

    @classmethod
    def one(cls) -> "EvenPoly":
        return cls({0: Fraction(1)})

    def coeff(self, exp: int) -> Fraction:
        return self._c.get(exp, Fraction(0))

    def items(self) -> list[tuple[int, Fraction]]:
        """(exponent, coefficient) pairs in increasing exponent order."""
        return sorted(self._c.items())

    @property
    def max_degree(self) -> int:
        return max(self._c, default=0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EvenPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __add__(self, other: "EvenPoly") -> "EvenPoly":
        c = dict(self._c)
        for exp, v in other._c.items():
            c[exp] = c.get(exp, Fraction(0)) + v
        return EvenPoly(c)

    def scale(self, factor: Rat) -> "EvenPoly":
        f = Fraction(factor)
        return EvenPoly({e: v * f for e, v in self._c.items()})

    def eval_at_square(self, t_squared: Rat) -> Fraction:
        """Exact value at a point given by t^2 (only even powers occur)."""
        s = Fraction(t_squared)
        total = Fraction(0)
        for exp, v in self._c.items():
            total += v * s ** (exp // 2)
        return total

    def eval_mpf(self, t) -> mp.mpf:
        """Value at an mpmath point, Horner in t^2 at current precision."""
        if not self._c:
            return mp.mpf(0)
        s = mp.mpf(t) ** 2
        acc = mp.mpf(0)
        for w in range(self.max_degree // 2, -1, -1):
            acc = acc * s
            v = self._c.get(2 * w)
            if v is not None:
                acc += mp.mpf(v.numerator) / v.denominator
        return acc

    def __repr__(self) -> str:
        if not self._c:
            return "EvenPoly(0)"
        parts = [f"{format_rational(v)}*t^{e}" if e else format_rational(v) for e, v in self.items()]
        return "EvenPoly(" + " + ".join(parts) + ")"


def poly_mul_trunc(p: EvenPoly, q: EvenPoly, max_deg: int) -> EvenPoly:
    """Exact product with every exponent above max_deg discarded."""
    if max_deg < 0:
        raise ValueError("max_deg must be nonnegative")
    out: dict[int, Fraction] = {}
    for e1, v1 in p.items():
        if e1 > max_deg:
            break
        for e2, v2 in q.items():
            e = e1 + e2
            if e > max_deg:
                break
            out[e] = out.get(e, Fraction(0)) + v1 * v2
    return EvenPoly(out)


class InvNSeries:
    """Truncated expansion sum_{i=0}^{order} row_i(t) / n^i with exact rows."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[EvenPoly]):
        if not rows:
            raise ValueError("at least row 0 is required")
        self._rows = tuple(rows)

    @property
    def order(self) -> int:
        return len(self._rows) - 1

    def row(self, i: int) -> EvenPoly:
        return self._rows[i]

    @property
    def rows(self) -> tuple[EvenPoly, ...]:
        return self._rows

    def monomials(self) -> Iterator[tuple[int, int, Fraction]]:
        """All (row, exponent, coefficient) entries, row-major, sorted."""
        for i, r in enumerate(self._rows):
            for exp, v in r.items():
                yield i, exp, v

    def eval_fraction(self, t_squared: Rat, n: Rat) -> Fraction:
        """Exact value at rational t^2 and n."""
        nq = Fraction(n)
        total = Fraction(0)
        for i, r in enumerate(self._rows):
            total += r.eval_at_square(t_squared) / nq**i
        return total

    def eval_mpf(self, t, n) -> mp.mpf:
        nn = mp.mpf(n)
        return mp.fsum(r.eval_mpf(t) / nn**i for i, r in enumerate(self._rows))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InvNSeries):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"InvNSeries(order={self.order}, rows={list(self._rows)!r})"


def _falling_factorial_over_factorial(l: int) -> list[Fraction]:
    """Coefficients (index = power of n) of n(n-1)...(n-l+1) / l!."""
    poly = [Fraction(1)]
    for r in range(l):
        nxt = [Fraction(0)] * (len(poly) + 1)
        for s, coeff in enumerate(poly):
            nxt[s + 1] += coeff
            nxt[s] -= coeff * r
        poly = nxt
    fl = math.factorial(l)
    return [coeff / fl for coeff in poly]


def _validate_a(a: Mapping[int, Rat], min_j_needed: int) -> dict[int, Fraction]:
    if min_j_needed >= 2:
        if not a:
            raise ValueError("insufficient input coefficients: a_j required for 2 <= j <= "
                             f"{min_j_needed}")
        top = max(a)
        if top < min_j_needed:
            raise ValueError(f"insufficient input coefficients: have up to a_{top}, "
                             f"need a_j through j = {min_j_needed}")
        missing = [j for j in range(2, top + 1) if j not in a]
        if missing:
            raise ValueError(f"insufficient input coefficients: missing a_{missing[0]}")
    if any(j < 2 for j in a):
        raise ValueError("a_j indices must start at j = 2")
    return {int(j): Fraction(v) for j, v in a.items()}


def collect_binomial_rows(a: Mapping[int, Rat], max_row: int, max_w: int) -> list[dict[int, Fraction]]:
    """Rows of [1 + sum a_j t^{2j}/n^j]^n, keeping t^{2w} with w <= max_w.

    Returns dicts mapping w (half the t-exponent) to the exact coefficient
    of t^{2w} / n^i for each row i <= max_row.  Shared by the order-m
    expansion (max_row = m, max_w = 2m) and by the wider bookkeeping table
    that mirrors the degree-28 fixture (max_row = 13, max_w = 14).
    """
    rows: list[dict[int, Fraction]] = [dict() for _ in range(max_row + 1)]
    rows[0][0] = Fraction(1)
    base = {j: v for j, v in a.items() if v and j <= max_w}
    power: dict[int, Fraction] = {0: Fraction(1)}
    for l in range(1, max_w // 2 + 1):
        nxt: dict[int, Fraction] = {}
        for w1, v1 in power.items():
            for j, aj in base.items():
                w = w1 + j
                if w <= max_w:
                    nxt[w] = nxt.get(w, Fraction(0)) + v1 * aj
        power = {w: v for w, v in nxt.items() if v}
        if not power:
            break
        ffl = _falling_factorial_over_factorial(l)
        for w, coeff_w in power.items():
            for s, coeff_s in enumerate(ffl):
                if not coeff_s:
                    continue
                i = w - s
                if 0 <= i <= max_row:
                    rows[i][w] = rows[i].get(w, Fraction(0)) + coeff_w * coeff_s
    return [{w: v for w, v in r.items() if v} for r in rows]


def nseries_pow_binomial(a: Mapping[int, Rat], m: int) -> InvNSeries:
    """Collect [1 + sum_{j>=2} a_j t^{2j}/n^j]^n through order m in 1/n.

    Requires a_j for every 2 <= j <= J with J >= 2m, since t^{2w} with
    w <= 2m can draw on any single a_w.  Rows beyond order m are discarded
    exactly; everything kept is exact.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    aa = _validate_a(a, 2 * m)
    raw = collect_binomial_rows(aa, max_row=m, max_w=2 * m)
    return InvNSeries([EvenPoly({2 * w: v for w, v in r.items()}) for r in raw])
