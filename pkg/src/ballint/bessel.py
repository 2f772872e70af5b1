"""Expansion pipeline for the Bessel-normalized integral

    I_nu(n) = n^nu int_0^inf (2^nu Gamma(nu+1) |J_nu(t)| / t^nu)^n t^{2nu-1} dt,

for rational nu >= 1/2.  Structure mirrors the sinc pipeline: the
normalized Bessel function F_nu(t) = 2^nu Gamma(nu+1) J_nu(t)/t^nu has
F_nu(0) = 1 and Maclaurin quadratic term -t^2/(4(nu+1)), so multiplying
its partial sum by exp(t^2/(4(nu+1)n)) after the t -> t/sqrt(n) rescale
cancels the 1/n^1 band and leaves 1 + sum_{j>=2} a_j (t^2/4n)^j.
Collecting the n-th power in 1/n and integrating rows against the weight
exp(-t^2/(4(nu+1))) t^{2nu-1} gives

    I_nu(n) ~ c_0 [ 1 + gamma_1/n + gamma_2/n^2 + ... ],

with c_0 = (4^nu/2) (nu+1)^nu Gamma(nu) and every gamma_j an exact
rational function of nu.  At nu = 1/2 the kernel reduces to sinc and the
gamma_j coincide with the sinc pipeline's coefficients, which the tests
pin as the keystone identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .rationals import Rat, format_rational
from .series import EvenPoly, nseries_pow_binomial

__all__ = [
    "Nu",
    "BesselExpansion",
    "TailBoundBessel",
    "LANDAU_BOUND_C",
    "bessel_partial_sum",
    "bessel_aj",
    "bessel_moment_ratio",
    "bessel_expansion",
    "c0_exact",
    "c0_value",
    "i_nu_at_2",
    "bessel_tail_bound",
]

# |J_nu(t)| <= c t^(-1/3) for t > 0, nu >= 1/2 (Landau's uniform constant),
# kept as an exact rational so tail bounds stay reproducible.
LANDAU_BOUND_C = Fraction(7857468704, 10**10)


@dataclass(frozen=True)
class Nu:
    """Rational order nu >= 1/2 of the Bessel kernel."""

    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))
        if self.value < Fraction(1, 2):
            raise ValueError("nu must be at least 1/2")

    @property
    def is_integer(self) -> bool:
        return self.value.denominator == 1

    @property
    def is_half_integer(self) -> bool:
        return self.value.denominator == 2

    def __str__(self) -> str:
        return format_rational(self.value)


def _rising(nu: Fraction, count: int, start: int = 1) -> Fraction:
    """(nu+start)(nu+start+1)...(nu+start+count-1)."""
    out = Fraction(1)
    for r in range(start, start + count):
        out *= nu + r
    return out


def bessel_partial_sum(nu: Nu, k: int) -> EvenPoly:
    """Degree-2k Maclaurin partial sum of 2^nu Gamma(nu+1) J_nu(t)/t^nu.

    Coefficient of t^{2j} is (-1)^j / (4^j j! (nu+1)(nu+2)...(nu+j)),
    rational for rational nu; at nu = 1/2 this is the sinc partial sum.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    v = nu.value
    coeffs = {}
    for j in range(k + 1):
        coeffs[2 * j] = Fraction((-1) ** j, 4**j * math.factorial(j)) / _rising(v, j)
    return EvenPoly(coeffs)


def bessel_aj(nu: Nu, j: int, k: int) -> Fraction:
    """Coefficient of u^j, u = t^2/(4n), in exp(u/(nu+1)) * T_k at t/sqrt n.

    a_j = sum_{i=0}^{min(j,k)} (-1)^i / ((nu+1)^{j-i} (j-i)! i! (nu+1)...(nu+i)),
    with the partial-sum index i capped at k.  a_0 = 1 and a_1 = 0: the
    u/( nu+1) terms of the two factors cancel by construction.
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    if k < 1:
        raise ValueError("k must be at least 1")
    v = nu.value
    total = Fraction(0)
    for i in range(0, min(j, k) + 1):
        term = Fraction((-1) ** i, math.factorial(j - i) * math.factorial(i))
        term /= (v + 1) ** (j - i) * _rising(v, i)
        total += term
    return total


def bessel_moment_ratio(nu: Nu, j: int) -> Fraction:
    """int_0^inf e^{-t^2/(4(nu+1))} t^{2j+2nu-1} dt over the j = 0 integral.

    Equals (4(nu+1))^j * nu(nu+1)...(nu+j-1) by the Gamma recurrence.
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    v = nu.value
    return Fraction(4 * (v + 1)) ** j * _rising(v, j, start=0)


@dataclass(frozen=True)
class BesselExpansion:
    """I_nu(n) ~ c_0 [gamma_0 + gamma_1/n + ... + gamma_m/n^m], gamma_0 = 1.

    c0_descriptor carries the closed form of c_0 as three symbolic
    factors; its decimal value comes from c0_value.
    """

    nu: Nu
    m: int
    k: int
    gamma_coeffs: tuple[Fraction, ...]
    c0_descriptor: tuple[str, str, str]

    def c0_mpf(self, digits: int = 30) -> mp.mpf:
        return c0_value(self.nu, digits)

    def partial_sum_mpf(self, n, digits: int = 30) -> mp.mpf:
        """c_0 * sum_j gamma_j / n^j evaluated at the requested precision."""
        with mp.workdps(digits + 10):
            nn = mp.mpf(n)
            s = mp.fsum(
                mp.mpf(g.numerator) / g.denominator / nn**j for j, g in enumerate(self.gamma_coeffs)
            )
            return +(c0_value(self.nu, digits + 10) * s)


def bessel_expansion(nu: Nu, m: int, k: int | None = None) -> BesselExpansion:
    """Exact gamma_0..gamma_m for rational nu; k defaults to m + 1.

    The collection runs in the variable u = t^2/4 (EvenPoly exponent 2w
    standing for u^w); the 4^w from the moment ratio cancels against the
    u-normalization, leaving (nu+1)^w nu(nu+1)...(nu+w-1) per monomial.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if k is None:
        k = m + 1
    if k <= m:
        raise ValueError("truncation too short: k must be at least m + 1")
    a = {j: bessel_aj(nu, j, k) for j in range(2, max(2 * m, 2) + 1)}
    series = nseries_pow_binomial(a, m)
    gammas = []
    for i in range(m + 1):
        total = Fraction(0)
        for exp, v in series.row(i).items():
            w = exp // 2
            total += v * bessel_moment_ratio(nu, w) / Fraction(4) ** w
        gammas.append(total)
    return BesselExpansion(nu=nu, m=m, k=k, gamma_coeffs=tuple(gammas),
                           c0_descriptor=c0_descriptor(nu))


def c0_descriptor(nu: Nu) -> tuple[str, str, str]:
    """The three symbolic factors of c_0 = (4^nu/2)(nu+1)^nu Gamma(nu)."""
    return (f"4^({nu})/2", f"({format_rational(nu.value + 1)})^({nu})", f"Gamma({nu})")


def c0_exact(nu: Nu) -> Fraction | None:
    """Exact c_0 = (4^nu/2)(nu+1)^nu Gamma(nu) for positive integer nu, else None."""
    if not nu.is_integer:
        return None
    p = int(nu.value)
    return Fraction(4**p, 2) * Fraction(p + 1) ** p * math.factorial(p - 1)


def c0_value(nu: Nu, digits: int = 30) -> mp.mpf:
    """c_0 = (4^nu/2)(nu+1)^nu Gamma(nu) to the requested decimal digits.

    Integer nu goes through the exact rational; half-integer nu uses the
    Gamma(1/2) = sqrt(pi) recurrence; other rational nu fall back to the
    library Gamma at padded precision.
    """
    if digits < 1:
        raise ValueError("digits must be positive")
    v = nu.value
    with mp.workdps(digits + 10):
        exact = c0_exact(nu)
        if exact is not None:
            return +(mp.mpf(exact.numerator) / exact.denominator)
        prefactor = mp.power(4, mp.mpf(v.numerator) / v.denominator) / 2
        prefactor *= mp.power(mp.mpf((v + 1).numerator) / (v + 1).denominator, mp.mpf(v.numerator) / v.denominator)
        if nu.is_half_integer:
            # Gamma(1/2 + r) = sqrt(pi) (2r-1)!! / 2^r for integer r >= 0
            r = (v - Fraction(1, 2)).numerator // (v - Fraction(1, 2)).denominator if v > Fraction(1, 2) else 0
            dd = Fraction(1)
            for x in range(2 * r - 1, 0, -2):
                dd *= x
            gam = mp.sqrt(mp.pi) * mp.mpf(dd.numerator) / dd.denominator / mp.power(2, r)
        else:
            gam = mp.gamma(mp.mpf(v.numerator) / v.denominator)
        return +(prefactor * gam)


def i_nu_at_2(nu: Nu) -> Fraction:
    """Closed form I_nu(2) = 2^{3nu-1} nu! (nu-1)! for positive integer nu.

    Also checks the stated comparison against c_0: equality at nu = 1,
    strict inequality I_nu(2) < c_0 for nu > 1.
    """
    if not nu.is_integer:
        raise ValueError("closed form only supported for positive integer nu")
    p = int(nu.value)
    value = Fraction(2) ** (3 * p - 1) * math.factorial(p) * math.factorial(p - 1)
    c0 = c0_exact(nu)
    assert c0 is not None
    if p == 1:
        assert value == c0
    else:
        assert value < c0, "closed form exceeds the limiting constant"
    return value


@dataclass(frozen=True)
class TailBoundBessel:
    """Bound on the integral beyond the cutoff X, from |J_nu(t)| <= c t^{-1/3}."""

    nu: Nu
    n: int
    cutoff: mp.mpf
    bound: mp.mpf


def bessel_tail_bound(nu: Nu, n: int, X, digits: int = 30) -> TailBoundBessel:
    """n^nu (2^nu Gamma(nu+1) c)^n X^{-(nu+1/3)n+2nu} / ((nu+1/3)n - 2nu).

    Valid once X is at least 2^nu Gamma(nu+1), the point where the decay
    envelope c t^{-1/3} gives the integrand modulus below 1; the bound is
    monotone decreasing in X.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    v = nu.value
    with mp.workdps(digits + 10):
        nv = mp.mpf(v.numerator) / v.denominator
        amp = mp.power(2, nv) * mp.gamma(nv + 1)
        Xv = mp.mpf(X)
        if Xv < amp:
            raise ValueError("cutoff below 2^nu Gamma(nu+1)")
        c = mp.mpf(LANDAU_BOUND_C.numerator) / LANDAU_BOUND_C.denominator
        expo = -(nv + mp.mpf(1) / 3) * n + 2 * nv
        denom = (nv + mp.mpf(1) / 3) * n - 2 * nv
        val = mp.power(n, nv) * mp.power(amp * c, n) * mp.power(Xv, expo) / denom
        return TailBoundBessel(nu=nu, n=n, cutoff=+Xv, bound=+val)
