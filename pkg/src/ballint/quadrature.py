"""High-precision evaluation of the sinc and Bessel power integrals.

This is the numerical oracle against which the exact pipelines are
checked, so the error accounting is explicit everywhere: every estimate
carries an abs_err_bound that adds the quadrature stabilization gap, an
analytic bound on whatever lies beyond the cutoff, and a working-precision
floor.  Analytic tail bounds are never folded into the value.

Integration strategy: |f|^n is smooth except at the zeros of f, so the
domain is split there (multiples of pi for sinc, bisected sign changes
for Bessel) and each smooth piece gets a fixed-order Gauss-Legendre rule.
The whole subdivision is refined together, doubling the order until two
successive totals agree below target/2, so the node set is a
deterministic function of the inputs and results are bit-reproducible.

Two sinc regimes: for large n the integrand dies fast and a finite lobe
count with the t^{-n} envelope bound suffices; for small n the envelope
would need astronomically many lobes, so the entire tail is folded into
one finite panel exactly via sum_{j>=M} (j pi + s)^{-n} =
pi^{-n} zeta_H(n, M + s/pi), keeping the value a finite-interval
quadrature of an exactly transformed integrand.

For the Bessel integral at n = 2 no usable envelope exists (the tail
decays only like 1/X); there the tail equals
(2^nu Gamma(nu+1))^2 (1 - S(X)) / (2 nu) with
S(X) = J_nu(X)^2 + 2 sum_{k>=1} J_{nu+k}(X)^2, which is evaluated as a
convergent series and added to the value, with its truncation error in
the bound.  This is the one documented exception to the
finite-interval-only rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import mpmath as mp

from .bessel import Nu, bessel_tail_bound
from .sinc import cutoff_tail_bound

__all__ = [
    "Precision",
    "QuadEstimate",
    "BesselEval",
    "DecayFit",
    "PrecisionFailure",
    "LOBE_CAP",
    "ZETA_LOBES",
    "T_MAX",
    "sinc_integral",
    "bessel_j_normalized",
    "bessel_integral",
    "remainder_decay_fit",
]

LOBE_CAP = 64     # most pi-lobes worth integrating before switching to the zeta tail
ZETA_LOBES = 24   # head lobes kept in zeta mode
T_MAX = 100       # Bessel series evaluation cap (cancellation budget)

_GL_CACHE: dict[tuple[int, int], tuple] = {}
_ZERO_CACHE: dict[tuple, tuple] = {}
_QUAD_CACHE: dict[tuple, "QuadEstimate"] = {}


@dataclass(frozen=True)
class Precision:
    """Requested accuracy: decimal_digits of working room, absolute target.

    target_abs_err defaults to 10^-(decimal_digits - 10), keeping ten
    guard digits; the working precision adds fifteen more on top of
    decimal_digits.  max_refinements counts quadrature-order doublings.
    """

    decimal_digits: int = 30
    target_abs_err: float | None = None
    max_refinements: int = 5

    def __post_init__(self):
        if self.decimal_digits < 15:
            raise ValueError("decimal_digits must be at least 15")
        if self.target_abs_err is None:
            object.__setattr__(self, "target_abs_err", 10.0 ** (-(self.decimal_digits - 10)))
        t = float(self.target_abs_err)
        if t <= 0:
            raise ValueError("target_abs_err must be positive")
        if t < 10.0 ** (-(self.decimal_digits + 5)):
            raise ValueError("target finer than the working precision supports")

    @property
    def working_dps(self) -> int:
        return self.decimal_digits + 15


@dataclass(frozen=True)
class QuadEstimate:
    """A finite-interval quadrature value with a one-sided error budget.

    abs_err_bound = stabilization gap + analytic bound beyond cutoff_used
    + precision floor.  cutoff_used is inf when the tail was transformed
    into the integrand itself and nothing lies beyond.
    """

    value: mp.mpf
    abs_err_bound: mp.mpf
    cutoff_used: mp.mpf
    pieces: int


@dataclass(frozen=True)
class BesselEval:
    """One point of f_nu(t) = 2^nu Gamma(nu+1) J_nu(t) / t^nu."""

    nu: Nu
    t: mp.mpf
    value: mp.mpf
    err_bound: mp.mpf


@dataclass(frozen=True)
class DecayFit:
    """Least-squares slope of log|remainder| against log n.

    signed_coeff = sign(remainder at largest usable n) * exp(intercept):
    when slope is close to -(m+1) this estimates the next expansion
    coefficient; residuals are per-point fit residuals in log10 units.
    """

    slope: float
    amplitude: float
    signed_coeff: float
    residuals: tuple[float, ...]
    used_n: tuple[int, ...]
    dropped_n: tuple[int, ...]


class PrecisionFailure(ArithmeticError):
    """Raised when the refinement ladder cannot reach the target; carries
    the best estimate obtained so far in .estimate."""

    def __init__(self, message: str, estimate: QuadEstimate):
        super().__init__(message)
        self.estimate = estimate


def _legendre_rule(order: int, dps: int) -> tuple:
    """Gauss-Legendre nodes/weights on [-1, 1], Newton-refined at dps."""
    key = (order, dps)
    cached = _GL_CACHE.get(key)
    if cached is not None:
        return cached
    with mp.workdps(dps):
        stop = mp.mpf(10) ** (-dps)
        half: list[tuple[mp.mpf, mp.mpf]] = []
        for i in range(1, order // 2 + 1):
            x = mp.cos(mp.pi * (i - mp.mpf(1) / 4) / (order + mp.mpf(1) / 2))
            dp = mp.mpf(1)
            for _ in range(100):
                p0, p1 = mp.mpf(1), x
                for j in range(2, order + 1):
                    p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
                dp = order * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < stop:
                    break
            w = 2 / ((1 - x * x) * dp * dp)
            half.append((x, w))
        rule = []
        for x, w in reversed(half):
            rule.append((-x, w))
        if order % 2 == 1:
            x = mp.mpf(0)
            p0, p1 = mp.mpf(1), x
            for j in range(2, order + 1):
                p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
            dp = order * (x * p1 - p0) / (x * x - 1)
            rule.append((x, 2 / (dp * dp)))
        for x, w in half:
            rule.append((x, w))
        result = tuple(rule)
    _GL_CACHE[key] = result
    return result


Piece = tuple[mp.mpf, mp.mpf, Callable[[mp.mpf], mp.mpf]]


def _piece_total(pieces: Sequence[Piece], order: int, dps: int) -> mp.mpf:
    rule = _legendre_rule(order, dps)
    sums = []
    for a, b, f in pieces:
        mid = (a + b) / 2
        rad = (b - a) / 2
        sums.append(rad * mp.fsum(w * f(mid + rad * x) for x, w in rule))
    return mp.fsum(sums)


def _refine_ladder(pieces, prec, scale, tail, extra_value, extra_err, cutoff_used, wdps):
    """Run the order-doubling ladder once at fixed working precision.

    Returns (estimate, converged); the estimate always reflects the last
    rung so a failed ladder still reports its best value.
    """
    target = mp.mpf(prec.target_abs_err)
    prev = None
    diff = mp.inf
    total = mp.mpf(0)
    converged = False
    for r in range(prec.max_refinements + 1):
        order = 16 * 2**r
        total = _piece_total(pieces, order, wdps)
        if prev is not None:
            diff = abs(total - prev)
            if diff < target / 2:
                converged = True
                break
        prev = total
    value = scale * total + extra_value
    err = scale * diff + tail + extra_err + mp.mpf(10) ** (2 - wdps) * (1 + abs(value))
    est = QuadEstimate(value=+value, abs_err_bound=+err, cutoff_used=+mp.mpf(cutoff_used), pieces=len(pieces))
    return est, converged


def _run_with_escalation(build_pieces, prec, label):
    """Ladder at working precision, then once more with extra digits."""
    last = None
    for wdps in (prec.working_dps, prec.working_dps + 20):
        with mp.workdps(wdps):
            pieces, scale, tail, extra_value, extra_err, cutoff = build_pieces(wdps)
            est, ok = _refine_ladder(pieces, prec, scale, tail, extra_value, extra_err, cutoff, wdps)
        if ok:
            return est
        last = est
    raise PrecisionFailure(f"{label}: target {prec.target_abs_err} not reached "
                           f"after {prec.max_refinements} order doublings and one precision raise", last)


def _sinc_mode(n: int, prec: Precision) -> tuple[str, int]:
    """Pick lobe-truncation or zeta-tail mode, deterministically.

    Truncation needs the envelope bound sqrt(n) A^{1-n}/(n-1) below
    target/2; if that cutoff exceeds LOBE_CAP lobes, use the exact tail
    transform with a fixed ZETA_LOBES head.
    """
    t = float(prec.target_abs_err)
    ln_a = (math.log(2 * math.sqrt(n)) - math.log((n - 1) * t)) / (n - 1)
    A = max(math.exp(ln_a) if ln_a < 700 else math.inf, math.sqrt(6))
    lobes = max(2, math.ceil(A / math.pi)) if math.isfinite(A) else LOBE_CAP + 1
    if lobes <= LOBE_CAP:
        return "truncate", lobes
    return "zeta", ZETA_LOBES


def sinc_integral(n: int, prec: Precision | None = None, use_memo: bool = True) -> QuadEstimate:
    """sqrt(n) int_0^inf |sin t / t|^n dt to the requested accuracy.

    Splits at every multiple of pi (the only non-smooth points of the
    integrand) and integrates each lobe by Gauss-Legendre under the
    doubling ladder.  In truncation mode the t^{-n} envelope bound on the
    discarded tail goes into abs_err_bound; in zeta mode the tail is an
    exact extra panel and cutoff_used is reported as inf.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    prec = prec or Precision()
    mode, lobes = _sinc_mode(n, prec)
    key = ("sinc", n, prec.decimal_digits, float(prec.target_abs_err), prec.max_refinements)
    if use_memo and key in _QUAD_CACHE:
        return _QUAD_CACHE[key]

    def build(wdps):
        pi = mp.pi
        def lobe(t, n=n):
            return (abs(mp.sin(t)) / t) ** n
        pieces = [(j * pi, (j + 1) * pi, lobe) for j in range(lobes)]
        scale = mp.sqrt(n)
        if mode == "truncate":
            cutoff = lobes * pi
            tail = cutoff_tail_bound(n, cutoff)
            return pieces, scale, tail, mp.mpf(0), mp.mpf(0), cutoff
        def zeta_panel(s, n=n, M=lobes):
            return mp.sin(s) ** n * mp.zeta(n, M + s / mp.pi) / mp.pi**n
        pieces.append((mp.mpf(0), pi, zeta_panel))
        return pieces, scale, mp.mpf(0), mp.mpf(0), mp.mpf(0), mp.inf

    est = _run_with_escalation(build, prec, f"sinc_integral(n={n})")
    if use_memo:
        _QUAD_CACHE[key] = est
    return est


def _cancellation_allowance(t: float) -> int:
    """Extra digits to absorb the alternating-series cancellation up to t."""
    return int(2 * max(t, 0) / math.log(10)) + 10


def _f_nu_series(v: Fraction, t: mp.mpf) -> tuple[mp.mpf, mp.mpf]:
    """(value, last term magnitude) of the normalized series at ambient dps."""
    u = t * t / 4
    term = mp.mpf(1)
    total = mp.mpf(1)
    if u == 0:
        return total, mp.mpf(0)
    nv = mp.mpf(v.numerator) / v.denominator
    eps = mp.mpf(10) ** (-(mp.mp.dps + 3))
    j = 1
    while True:
        term *= -u / (j * (nv + j))
        total += term
        if abs(term) < eps and j * j > u:
            return total, abs(term)
        j += 1
        if j > 100000:
            raise ArithmeticError("normalized Bessel series failed to converge")


def _f_nu(v: Fraction, t: mp.mpf, allowance: int) -> mp.mpf:
    with mp.extradps(allowance):
        total, _ = _f_nu_series(v, t)
    return +total


def bessel_j_normalized(nu: Nu, t, prec: Precision | None = None) -> BesselEval:
    """f_nu(t) = 2^nu Gamma(nu+1) J_nu(t) / t^nu by the Maclaurin series.

    The series alternates with heavy cancellation for large t, so the
    working precision is raised by about 2t/ln 10 digits before summing;
    err_bound covers the neglected tail and accumulated rounding.
    """
    prec = prec or Precision()
    with mp.workdps(prec.working_dps):
        tt = mp.mpf(t)
        if tt < 0:
            raise ValueError("t must be nonnegative")
        if tt > T_MAX:
            raise ValueError(f"t exceeds the evaluation cap {T_MAX} (cancellation budget)")
        allowance = _cancellation_allowance(float(tt))
        with mp.extradps(allowance):
            value, last = _f_nu_series(nu.value, tt)
        value = +value
        err = 2 * last + mp.mpf(10) ** (1 - prec.working_dps) * (1 + abs(value))
        return BesselEval(nu=nu, t=+tt, value=value, err_bound=+err)


def _bessel_zeros(nu: Nu, X: mp.mpf, prec: Precision, allowance: int) -> tuple:
    """All zeros of f_nu in (0, X), by 0.25-grid sampling plus bisection."""
    key = (nu.value, mp.nstr(X, 25), prec.decimal_digits)
    cached = _ZERO_CACHE.get(key)
    if cached is not None:
        return cached
    step = mp.mpf(1) / 4
    tol = mp.mpf(10) ** (-(prec.decimal_digits + 5))
    zeros = []
    t_prev = mp.mpf(0)
    s_prev = 1  # f_nu(0) = 1
    t = step
    while t_prev < X:
        t_cur = min(t, X)
        val = _f_nu(nu.value, t_cur, allowance)
        if val == 0:
            zeros.append(t_cur)
            s_cur = -s_prev
        else:
            s_cur = 1 if val > 0 else -1
            if s_cur != s_prev:
                a, b = t_prev, t_cur
                fa = _f_nu(nu.value, a, allowance) if a > 0 else mp.mpf(1)
                if fa == 0 or (fa > 0) == (val > 0):
                    raise ArithmeticError("zero bracketing failed; increase sampling density")
                while b - a > tol:
                    m_ = (a + b) / 2
                    fm = _f_nu(nu.value, m_, allowance)
                    if fm == 0:
                        a = b = m_
                    elif (fm > 0) == (fa > 0):
                        a, fa = m_, fm
                    else:
                        b = m_
                zeros.append((a + b) / 2)
        t_prev, s_prev = t_cur, s_cur
        t += step
    result = tuple(z for z in zeros if z < X - tol)
    _ZERO_CACHE[key] = result
    return result


def _completed_tail_n2(nu: Nu, X: mp.mpf, amp: mp.mpf) -> tuple[mp.mpf, mp.mpf]:
    """Exact n = 2 tail amp^2 (1 - S(X)) / (2 nu) and its truncation error.

    S(X) = J_nu(X)^2 + 2 sum_{k>=1} J_{nu+k}(X)^2 telescopes
    d/dx S = 2 nu J_nu^2 / x, so the tail integral of amp^2 J_nu^2 / t
    beyond X is exactly amp^2 (1 - S(X)) / (2 nu).  Terms are summed until
    the (X/2)^{nu+k}/Gamma(nu+k+1) prefactor is negligible; |f| <= 1 makes
    the prefactor an envelope for the term.
    """
    v = nu.value
    allowance = _cancellation_allowance(float(X))
    with mp.extradps(allowance + 10):
        nv = mp.mpf(v.numerator) / v.denominator
        pref = mp.power(X / 2, nv) / mp.gamma(nv + 1)
        stop = mp.mpf(10) ** (-(mp.mp.dps + 5))
        S = mp.mpf(0)
        k = 0
        while pref > stop:
            fk = _f_nu(v + k, X, 0)  # already inside the extended context
            jk = fk * pref
            S += (jk * jk) if k == 0 else 2 * (jk * jk)
            k += 1
            pref *= (X / 2) / (nv + k)
        trunc = 3 * pref * pref
        tail = amp * amp * (1 - S) / (2 * nv)
        err = amp * amp * (trunc + mp.mpf(10) ** (3 - mp.mp.dps) * (1 + k)) / (2 * nv)
    return +tail, +err


def bessel_integral(nu: Nu, n: int, prec: Precision | None = None,
                    cutoff_mult: float = 24, use_memo: bool = True) -> QuadEstimate:
    """n^nu int_0^inf (2^nu Gamma(nu+1)|J_nu(t)|/t^nu)^n t^{2nu-1} dt.

    Integrates to X = cutoff_mult * 2^nu Gamma(nu+1), splitting at every
    zero of J_nu located by grid sampling and bisection.  The first piece
    is mapped through t = y^{q/2} (nu = p/q) so the t^{2nu-1} branch point
    becomes the analytic monomial y^{p-1}.  For n >= 3 the decay-envelope
    tail bound at X goes into abs_err_bound; at n = 2 the tail is instead
    completed exactly into the value (see _completed_tail_n2).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if cutoff_mult < 1:
        raise ValueError("cutoff_mult must be at least 1")
    prec = prec or Precision()
    key = ("bessel", nu.value, n, prec.decimal_digits, float(prec.target_abs_err),
           prec.max_refinements, float(cutoff_mult))
    if use_memo and key in _QUAD_CACHE:
        return _QUAD_CACHE[key]

    p, q = nu.value.numerator, nu.value.denominator

    def build(wdps):
        v = nu.value
        nv = mp.mpf(v.numerator) / v.denominator
        amp = mp.power(2, nv) * mp.gamma(nv + 1)
        X = cutoff_mult * amp
        if X > T_MAX:
            raise ValueError(f"cutoff {mp.nstr(X, 8)} exceeds the evaluation cap {T_MAX}")
        allowance = _cancellation_allowance(float(X))
        zeros = _bessel_zeros(nu, X, prec, allowance)
        bounds = [mp.mpf(0), *zeros, X]

        def direct(t, n=n, nv=nv, allowance=allowance, v=v):
            return abs(_f_nu(v, t, allowance)) ** n * mp.power(t, 2 * nv - 1)

        def first_sub(y, n=n, allowance=allowance, v=v, p=p, q=q):
            t = mp.power(y, mp.mpf(q) / 2)
            return abs(_f_nu(v, t, allowance)) ** n * mp.mpf(q) / 2 * y ** (p - 1)

        pieces: list[Piece] = [(mp.mpf(0), mp.power(bounds[1], mp.mpf(2) / q), first_sub)]
        for a, b in zip(bounds[1:-1], bounds[2:]):
            pieces.append((a, b, direct))
        scale = mp.power(n, nv)
        if n == 2:
            extra, extra_err = _completed_tail_n2(nu, X, amp)
            return pieces, scale, mp.mpf(0), scale * extra, scale * extra_err, X
        tail = bessel_tail_bound(nu, n, X, digits=wdps).bound
        return pieces, scale, tail, mp.mpf(0), mp.mpf(0), X

    est = _run_with_escalation(build, prec, f"bessel_integral(nu={nu}, n={n})")
    if use_memo:
        _QUAD_CACHE[key] = est
    return est


def remainder_decay_fit(pipeline: str, m: int, n_grid: Sequence[int], nu: Nu | None = None,
                        prec: Precision | None = None, cutoff_mult: float = 24) -> DecayFit:
    """Fit the decay exponent of r(n) = integral - order-m partial sum.

    Fits log|r| against log n by least squares; grid points where the
    quadrature error budget is not at least 10x below |r| are dropped,
    and fewer than 3 surviving points is an error.  The slope should sit
    near -(m+1); exp(intercept), signed like r, then estimates the next
    coefficient (in absolute units, including the leading constant).
    """
    if pipeline not in ("sinc", "bessel"):
        raise ValueError("pipeline must be 'sinc' or 'bessel'")
    if pipeline == "bessel" and nu is None:
        raise ValueError("bessel pipeline needs nu")
    if m < 0:
        raise ValueError("m must be nonnegative")
    prec = prec or Precision(decimal_digits=50)

    from .sinc import sinc_expansion
    from .bessel import bessel_expansion

    wdps = prec.working_dps
    used, dropped, logs = [], [], []
    sign_at_largest = 1.0
    if pipeline == "sinc":
        exp_obj = sinc_expansion(m)
    else:
        exp_obj = bessel_expansion(nu, m)
    with mp.workdps(wdps):
        for n in sorted(n_grid):
            if pipeline == "sinc":
                est = sinc_integral(n, prec)
                model = mp.sqrt(3 * mp.pi / 2) * exp_obj.partial_sum_mpf(n)
            else:
                est = bessel_integral(nu, n, prec, cutoff_mult=cutoff_mult)
                model = exp_obj.partial_sum_mpf(n, digits=wdps)
            r = est.value - model
            if abs(r) == 0 or est.abs_err_bound > abs(r) / 10:
                dropped.append(n)
                continue
            used.append(n)
            logs.append((math.log(n), float(mp.log(abs(r)))))
            sign_at_largest = 1.0 if r > 0 else -1.0
    if len(used) < 3:
        raise ValueError(f"insufficient data: {len(used)} usable grid points, need at least 3")
    xs = [x for x, _ in logs]
    ys = [y for _, y in logs]
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    sxx = sum((x - xbar) ** 2 for x in xs)
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    residuals = tuple((y - (intercept + slope * x)) / math.log(10) for x, y in zip(xs, ys))
    amplitude = math.exp(intercept)
    return DecayFit(slope=slope, amplitude=amplitude, signed_coeff=sign_at_largest * amplitude,
                    residuals=residuals, used_n=tuple(used), dropped_n=tuple(dropped))
