"""Fixed-zero-mode correlators C(..., mu, c) at b = 1/sqrt(2).

Two routes to the same number:

* ``series_correlator`` sums the Coulomb-gas series
  P * sum_n (-mu e^{sqrt2 c})^n a_n / n! in extended precision;
* ``contour_correlator`` integrates the Mellin-Barnes representation
  P/(2 pi) int Gamma(-z) f(z) (mu e^{sqrt2 c})^z dy along Re z = x0.

``f_eval`` is the analytic interpolant of the coefficients, f(n) = a_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from . import specfun
from .coulomb import SQRT2, CorrelatorCase, iter_log_coefficients
from .errors import (DomainCut, DomainError, HypothesisViolation, PoleAt,
                     QuadratureFailure, TruncationFailure)
from .quadrature import composite_gl
from .specfun import _log_barnes_g_raw, _log_gamma_raw, _on_cut

LOG_4PI = math.log(4 * math.pi)
LOG_2PI = math.log(2 * math.pi)
NEAR_MINUS_ONE = 0.25   # zero case: switch to the rewritten form inside this radius
MAX_ABS_C = 5.0


@dataclass(frozen=True)
class SeriesSpec:
    max_terms: int = 20000
    tail_tol: float = 1e-15

    def __post_init__(self):
        if self.max_terms < 8:
            raise DomainError("max_terms must be at least 8")
        if not self.tail_tol > 0:
            raise DomainError("tail_tol must be positive")


@dataclass(frozen=True)
class QuadratureSpec:
    truncation_Y: float = 60.0
    rel_tol: float = 1e-11
    max_evals: int = 400000

    def __post_init__(self):
        if not self.truncation_Y > 0:
            raise DomainError("truncation_Y must be positive")
        if not 0 < self.rel_tol < 1e-2:
            raise DomainError("rel_tol must lie in (0, 1e-2)")


# ---------------------------------------------------------------------------
# the interpolant f

def _split_g(x):
    """(L, M) with G(x) = M exp(L): analytic log off the cut, plain value on it."""
    on = _on_cut(x)
    L = np.zeros_like(x)
    M = np.ones_like(x)
    if np.any(~on):
        L[~on] = _log_barnes_g_raw(x[~on])
    if np.any(on):
        M[on] = specfun.barnes_g(x[on])
    return L, M


def _split_gamma(x):
    on = _on_cut(x)
    L = np.zeros_like(x)
    M = np.ones_like(x)
    if np.any(~on):
        L[~on] = _log_gamma_raw(x[~on])
    if np.any(on):
        M[on] = specfun.gamma(x[on])
    return L, M


def _theta(x):
    return _log_barnes_g_raw(np.asarray(x, dtype=complex))


def _pi(x):
    return _log_gamma_raw(np.asarray(x, dtype=complex))


def _is_pole(x):
    return specfun._is_nonpos_int(x)


def _f_zero(d):
    # d = z + 1 = z - w
    z = d - 1.0
    if np.any(_on_cut(d) & (d != 0)):
        raise DomainCut("zero-point f is analytic only off (-inf, -1]")
    L = z * LOG_4PI + 0.5 * z * (z - 1.0)
    near = np.abs(d) < NEAR_MINUS_ONE
    far = ~near
    out = np.empty_like(d)
    if np.any(far):
        tf = d[far]
        out[far] = np.exp(L[far] + 2.0 * _theta(tf) - (z[far] - 1.0) * _pi(tf))
    if np.any(near):
        # G(z+1)^2 / Gamma(z+1)^(z-1) = G(z+2)^2 / Gamma(z+1)^(z+1), and
        # Gamma(t)^t = Gamma(t+1)^t t^(-t) with t^t -> 1 at t = 0
        tn = d[near]
        tlogt = np.zeros_like(tn)
        nz = tn != 0
        tlogt[nz] = tn[nz] * np.log(tn[nz])
        out[near] = np.exp(L[near] + 2.0 * _theta(tn + 1.0) - tn * _pi(tn + 1.0) + tlogt)
    return out


def _check_shifted(d, z):
    if np.any(_on_cut(d)):
        raise DomainCut("z - w must avoid (-inf, 0]")
    if np.any(_is_pole(z + 1.0)):
        raise PoleAt("f has poles at z = -1, -2, ...")


def _f_one(d, w):
    z = w + d
    _check_shifted(d, z)
    Lg, Mg = _split_g(z + 2.0)
    L = (z * LOG_4PI + 0.5 * z * (z - 3.0 - 2.0 * w) + _theta(d) - z * _pi(d)
         - _theta(-w) + Lg)
    return Mg * np.exp(L)


def _f_two(d, w, b1, b2):
    """Two-point f; w, b1, b2 may be arrays broadcasting against d."""
    z = w + d
    _check_shifted(d, z)
    L1, M1 = _split_g(z + b1)
    L2, M2 = _split_g(z + b2)
    Lf, Mf = _split_gamma(z + 1.0)
    L = (z * LOG_4PI + 0.5 * z * z - (1.5 + w) * z + Lf + L1 + L2 - z * _pi(d)
         - _theta(b1) - _theta(b2))
    return Mf * M1 * M2 * np.exp(L)


def _f_three(d, w, s1, s3):
    z = w + d
    _check_shifted(d, z)
    if np.any(_is_pole(z + 2.0 + s1)):
        raise PoleAt("z + 2 + sqrt2 alpha1 must avoid the nonpositive integers")
    L1, M1 = _split_g(z + 2.0 + s1)
    L3, M3 = _split_g(z + 2.0 + s3)
    Lf, Mf = _split_gamma(z + 1.0)
    L = (z * LOG_2PI + 0.5 * z * (z - 3.0 - 2.0 * w) + Lf + L1 + L3 - z * _pi(d)
         - _theta(1.0 + s1) - _theta(1.0 + s3))
    F1 = specfun.hyp2f1(1.0, d - 1.0, 1.0 + s1, 0.5)
    F2 = specfun.hyp2f1(1.0, d - 1.0, z + 2.0 + s1, 0.5)
    rg = specfun.rgamma
    bracket = (0.5 * F1 * rg(1.0 + s1) * rg(z + 1.0 + s3)
               - 0.5 * s3 * F2 * rg(z + 2.0 + s1) * rg(1.0 + s3))
    return Mf * M1 * M3 * np.exp(L) * bracket


def f_shifted(case: CorrelatorCase, d):
    """f(w + d) with the offset d = z - w supplied exactly (arrays allowed).

    Near the branch point z = w the offset cannot be recovered from z by
    subtraction, so callers that sample there pass d directly.
    """
    arr = np.asarray(d, dtype=complex)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).ravel()
    if not np.all(np.isfinite(flat)):
        raise DomainError("z must be finite")
    w = case.w
    if case.kind == "zero":
        out = _f_zero(flat)
    elif case.kind == "one":
        out = _f_one(flat, w)
    elif case.kind == "two":
        out = _f_two(flat, w, *case.betas)
    else:
        out = _f_three(flat, w, *(SQRT2 * a for a in case.alphas))
    out = out.reshape(arr.shape)
    return complex(out) if scalar else out


def f_eval(case: CorrelatorCase, z):
    """Analytic interpolant f with f(n) = a_n (array input allowed)."""
    return f_shifted(case, np.asarray(z, dtype=complex) - case.w)


# ---------------------------------------------------------------------------
# power series

def _series(case, log_x, weights=None, spec: SeriesSpec = SeriesSpec()):
    """sum_n (-x)^n a_n / n! * weight(n) with x = exp(log_x), in mpmath.

    ``weights`` is a list of callables n -> mpmath number (None means the
    plain sum); one pass over the coefficients serves all of them.  The
    sum is first attempted at modest precision; the size of the largest
    term relative to the result fixes the precision of a second pass when
    digits were lost to cancellation.
    """
    dps = 20
    while True:
        totals, biggest, n_used = _series_pass(case, log_x, weights, spec, dps)
        need = 0
        for total, big10 in zip(totals, biggest):
            tot10 = float(mpmath.log10(abs(total))) if total != 0 else -300.0
            if tot10 < big10 - dps + 8:
                # nothing but rounding noise survived: assume the sum is not
                # much below 1e-5 and retry with room for the largest term
                need = max(need, int(big10) + 25)
            else:
                need = max(need, int(max(0.0, big10 - tot10)) + 17)
        # 17 surviving digits are plenty for a double result
        if need <= dps:
            return [complex(t) for t in totals], n_used
        dps = need + 3


def _series_pass(case, log_x, weights, spec, dps):
    mp = mpmath
    if weights is None:
        weights = [None]
    k = len(weights)
    with mp.workdps(dps):
        lx = mp.mpc(log_x) + 1j * mp.pi  # log(-x)
        lfact = mp.mpf(0)
        totals = [mp.mpc(0)] * k
        biggest = [mp.mpf(0)] * k
        prev = None
        tol = mp.mpf(spec.tail_tol)
        for n, la in enumerate(iter_log_coefficients(case)):
            if n > 0:
                lfact += mp.log(n)
            base = mp.exp(n * lx + la - lfact)
            mag = mp.mpf(0)
            done = True
            for j, wfn in enumerate(weights):
                term = base if wfn is None else base * wfn(n)
                totals[j] += term
                m = abs(term)
                biggest[j] = max(biggest[j], m)
                mag = max(mag, m)
            if n >= 8 and prev is not None and prev > 0:
                r = mag / prev
                if r < 0.5:
                    # ratios decrease from here on (1/n! beats the growth of a_n)
                    r2 = 1.5 * r
                    tail = mag * r2 / (1 - r2)
                    for j in range(k):
                        if not (tail <= tol * abs(totals[j]) or mag == 0):
                            done = False
                    if done:
                        return totals, [float(mp.log10(b)) if b > 0 else -300.0 for b in biggest], n + 1
            prev = mag
            if n + 1 >= spec.max_terms:
                raise TruncationFailure(
                    f"series tail not below {spec.tail_tol} after {spec.max_terms} terms")


def series_correlator(case: CorrelatorCase, mu: float, c, spec: SeriesSpec = SeriesSpec()) -> complex:
    """C(case, mu, c) from the Coulomb-gas series (complex c allowed)."""
    if not mu > 0:
        raise DomainError("mu must be positive")
    log_x = complex(math.log(mu) + SQRT2 * complex(c))
    (val,), _ = _series(case, log_x, None, spec)
    return case.prefactor * val


# ---------------------------------------------------------------------------
# Mellin-Barnes contour

def default_line(case: CorrelatorCase) -> float:
    """Abscissa of the vertical contour used when none is given."""
    w = case.w
    if case.kind == "two" and w.real == 0:
        return 0.5
    return 0.5 * w.real


def check_contour_hypotheses(case: CorrelatorCase):
    w = case.w
    if case.kind in ("zero", "one"):
        if not -1.0 <= w.real < 0:
            raise HypothesisViolation(f"Re(w) = {w.real} outside [-1, 0)")
    elif case.kind == "two":
        if w.real == 0:
            if w.imag == 0:
                raise HypothesisViolation("Re(w) = 0 needs Im(w) != 0")
        elif not -0.5 < w.real < 0:
            raise HypothesisViolation(f"Re(w) = {w.real} outside (-1/2, 0)")
    else:
        if not -0.5 < w.real < 0:
            raise HypothesisViolation(f"Re(w) = {w.real} outside (-1/2, 0)")


def _check_line(case, x0):
    w = case.w
    if case.kind == "two" and w.real == 0:
        if not 0 < x0 < 1:
            raise HypothesisViolation(f"line shift q = {x0} must lie in (0, 1)")
    elif not w.real < x0 < 0:
        raise HypothesisViolation(f"line Re z = {x0} must lie in (Re w, 0) = ({w.real}, 0)")


def mb_integrand(case: CorrelatorCase, x0: float, y):
    """Gamma(-z) f(z) at z = x0 + i y."""
    y = np.asarray(y, dtype=float)
    z = x0 + 1j * y
    d = (x0 - case.w.real) + 1j * (y - case.w.imag)
    return np.exp(_split_neg_gamma(z)) * f_shifted(case, d)


def _split_neg_gamma(z):
    """log Gamma(-z) for Re z < 1 away from the poles."""
    mz = -z
    return np.where(mz.real > 0, _pi(np.where(mz.real > 0, mz, 1.0)),
                    _pi(np.where(mz.real > 0, 2.0, mz + 1.0)) - np.log(np.where(mz.real > 0, 1.0, mz)))


def contour_correlator(case: CorrelatorCase, mu: float, c: float,
                       spec: QuadratureSpec = QuadratureSpec(), x0: float | None = None) -> complex:
    """C(case, mu, c) from the Mellin-Barnes integral along Re z = x0."""
    if not mu > 0:
        raise DomainError("mu must be positive")
    c = float(c)
    if abs(c) > MAX_ABS_C:
        raise DomainError(f"|c| = {abs(c)} > {MAX_ABS_C}: oscillation too strong, use the series")
    check_contour_hypotheses(case)
    if x0 is None:
        x0 = default_line(case)
    _check_line(case, x0)
    lx = math.log(mu) + SQRT2 * c
    Y = spec.truncation_Y
    width = min(2.0, 0.5 * 2 * math.pi / (SQRT2 * abs(c) + abs(math.log(mu)) + 1.0))
    panels = max(2, int(math.ceil(2 * Y / width)))

    def integrand(y):
        z = x0 + 1j * y
        return mb_integrand(case, x0, y) * np.exp(z * lx)

    val, _ = composite_gl(integrand, -Y, Y, panels, spec.rel_tol, spec.max_evals)
    res = complex(val) / (2 * math.pi)
    if case.kind == "two" and case.w.real == 0:
        res += 1.0
    return case.prefactor * res


# ---------------------------------------------------------------------------
# integrand envelope

def _envelope_shape(y):
    ay = np.abs(y)
    return np.exp(-1.5 * ay * np.angle(1 + 1j * ay))


@lru_cache(maxsize=64)
def _fit_bound(case: CorrelatorCase, x0: float):
    ys = np.linspace(-80.0, 80.0, 1601)
    actual = np.abs(mb_integrand(case, x0, ys))
    ok = actual > 0
    logr = np.log(actual[ok]) - np.log(_envelope_shape(ys[ok]))
    lp = np.log(2.0 + np.abs(ys[ok]))
    c2 = float(np.polyfit(lp, logr, 1)[0])
    c1 = float(np.exp(np.max(logr - c2 * lp))) * 1.05
    return c1, c2


def bound_constants(case: CorrelatorCase, x0: float | None = None):
    """(C1, C2) of the fitted envelope C1 (2+|y|)^C2 exp(-3/2 |y| arg(1+i|y|))."""
    if x0 is None:
        x0 = default_line(case)
    return _fit_bound(case, float(x0))


def integrand_bound(case: CorrelatorCase, x0: float, y):
    """Upper envelope for |Gamma(-x0-iy) f(x0+iy)|.

    The exponential rate is the sum of the Gamma and f decay rates; the
    polynomial part is fitted on a sampling grid and scaled to dominate it.
    """
    c1, c2 = bound_constants(case, x0)
    y = np.asarray(y, dtype=float)
    res = c1 * (2.0 + np.abs(y)) ** c2 * _envelope_shape(y)
    return float(res) if res.ndim == 0 else res


def tail_bound(case: CorrelatorCase, x0: float, Y: float, mu: float = 1.0, c: float = 0.0) -> float:
    """Bound on the part of the contour integral beyond |y| = Y."""
    c1, c2 = bound_constants(case, x0)
    scale = math.exp(x0 * (math.log(mu) + SQRT2 * c)) / (2 * math.pi)
    # for |y| >= Y the exponential rate is at least 1.5 arg(1+iY)
    rate = 1.5 * math.atan(Y)
    poly = (2.0 + Y) ** max(c2, 0.0)
    # int_Y^inf (2+y)^C2 e^{-rate y} dy <= poly e^{-rate Y} / (rate - max(C2,0)/(2+Y))
    denom = rate - max(c2, 0.0) / (2.0 + Y)
    if denom <= 0:
        return math.inf
    return 2 * scale * c1 * poly * math.exp(-rate * Y) / denom


def choose_truncation(case: CorrelatorCase, x0: float, rel_tol: float, magnitude: float = 1e-3,
                      mu: float = 1.0, c: float = 0.0) -> float:
    """Smallest Y (on a grid of 5) with tail bound below rel_tol/10 * magnitude."""
    Y = 10.0
    while tail_bound(case, x0, Y, mu, c) > 0.1 * rel_tol * magnitude:
        Y += 5.0
        if Y > 400:
            raise QuadratureFailure("tail bound does not certify the tolerance")
    return Y
