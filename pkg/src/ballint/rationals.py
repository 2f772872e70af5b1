"""Exact rational scalars: canonical arithmetic, double factorials, strings.

Every symbolic coefficient in this package is an exact rational.  The
standard-library Fraction already guarantees the canonical form we need
(positive denominator, reduced to lowest terms, arbitrary-precision
integers), so it is the Rat type used throughout; this module adds the
few scalar helpers the pipelines share and the strict string format used
by fixtures and machine-readable output.
"""

from __future__ import annotations

import operator
import re
from fractions import Fraction

Rat = Fraction

_OPS = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
    # unicode spellings accepted as aliases
    "−": operator.sub,
    "×": operator.mul,
    "÷": operator.truediv,
}

# canonical literal: optional sign, no leading zeros, denominator >= 2 when present
_RAT_RE = re.compile(r"(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?\Z")


def rat_arith(a: Rat, b: Rat, op: str) -> Rat:
    """Apply one of +, -, *, / to two exact rationals.

    Division by zero raises ZeroDivisionError; the result is always in
    canonical form because Fraction normalizes on construction.
    """
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None
    if fn is operator.truediv and b == 0:
        raise ZeroDivisionError("division by zero: invalid operand")
    return fn(Fraction(a), Fraction(b))


def double_factorial(j: int) -> Rat:
    """(2j - 1)!! = (2j-1)(2j-3)...3*1, with the empty product (-1)!! = 1."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    out = 1
    for x in range(2 * j - 1, 0, -2):
        out *= x
    return Fraction(out)


def format_rational(q: Rat) -> str:
    """Canonical string "p/q" with the denominator omitted when it is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Rat:
    """Parse a canonical rational string, rejecting anything malformed.

    Accepted: an optionally negated integer with no leading zeros, or
    "p/q" with q >= 2 and gcd(|p|, q) = 1.  Anything else (whitespace,
    "+", "-0", "3/1", "2/4", "0/5", "1.5", empty) raises ValueError, so
    fixture files cannot silently carry mistranscribed entries.
    """
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    sign, num, den = m.group(1), m.group(2), m.group(3)
    if sign and num == "0":
        raise ValueError(f"malformed rational {text!r}: negative zero")
    if den is None:
        return Fraction(int(sign + num))
    if num == "0":
        raise ValueError(f"malformed rational {text!r}: zero numerator with denominator")
    if den == "1":
        raise ValueError(f"malformed rational {text!r}: denominator 1 must be omitted")
    value = Fraction(int(sign + num), int(den))
    if str(value.numerator) != sign + num or str(value.denominator) != den:
        raise ValueError(f"malformed rational {text!r}: not in lowest terms")
    return value
