"""Integration over the zero mode c.

The regularized correlator

    C_eps = int exp(-sqrt2 w c - eps^2 c^2) C(c) dc

is evaluated through the Mellin-Barnes representation of C(c): the
Gaussian c-integral is done in closed form, which leaves one line
integral in a scaled variable u,

    C_eps = P/(2 sqrt(pi)) int Gamma(-w-i eps u) f(w+i eps u) mu^(w+i eps u) e^(-u^2/2) du.

The renormalized limits eps^rho C_eps are extrapolated from a schedule
of eps values and compared with closed forms.  The Hankel prescription
replaces the real line by the keyhole contour at height sqrt2 pi i.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy.special import wofz

from . import specfun
from .coulomb import SQRT2, CorrelatorCase, _threads
from .correlator import (QuadratureSpec, _series, _split_neg_gamma, _f_two,
                         check_contour_hypotheses, default_line, f_shifted, mb_integrand)
from .errors import (DomainError, ExtrapolationUnstable, GridTooCoarse, HypothesisViolation,
                     PoleAt, QuadratureFailure)
from .quadrature import composite_gl, exp_sinh_rule, pairwise_sum, panel_nodes

SQRT_PI = math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# domain types

@dataclass(frozen=True)
class RegularizationSchedule:
    """Descending eps values and the extrapolation model applied to them.

    ``extrapolation`` is None (report the value at the smallest eps),
    ``"richardson"`` (fit powers eps^j, j <= order) or ``"richardson-log"``
    (fit eps^j log(eps)^i, i <= j <= order).
    """

    epsilons: tuple = tuple(0.025 * 2.0 ** (-k / 2) for k in range(8))
    extrapolation: str | None = "richardson-log"
    order: int = 2

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilons)
        object.__setattr__(self, "epsilons", eps)
        if len(eps) < 2:
            raise DomainError("schedule needs at least two eps values")
        if any(e <= 0 for e in eps):
            raise DomainError("eps values must be positive")
        if any(b >= a for a, b in zip(eps, eps[1:])):
            raise DomainError("eps values must be strictly decreasing")
        if eps[-1] < 1e-4:
            raise DomainError("smallest eps must be at least 1e-4")
        if self.extrapolation not in (None, "richardson", "richardson-log"):
            raise DomainError(f"unknown extrapolation {self.extrapolation!r}")
        if self.order < 1:
            raise DomainError("order must be positive")

    @classmethod
    def default(cls, case: CorrelatorCase | None = None):
        """Half-octave steps from 0.025 with the log-augmented fit.

        f has a branch point at z = w, so eps^rho C_eps carries eps^j log(eps)^i
        terms (already a linear eps term in the zero case); a pure power
        fit stalls near 1e-3 relative.
        """
        return cls()


@dataclass(frozen=True)
class ContourPrescription:
    kind: str = "real"

    def __post_init__(self):
        if self.kind not in ("real", "hankel"):
            raise DomainError("prescription is 'real' or 'hankel'")


@dataclass(frozen=True)
class Bump:
    """scale * exp(-1/(1-r^2)) with r = |x - center| / radius, zero for r >= 1."""

    center: tuple
    radius: float
    scale: float = 1.0

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.center, dtype=float))
        object.__setattr__(self, "center", tuple(float(x) for x in c))
        if not self.radius > 0:
            raise DomainError("bump radius must be positive")

    def __call__(self, *coords):
        x = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in coords))
        if len(x) != len(self.center):
            raise DomainError(f"bump lives in dimension {len(self.center)}")
        r2 = sum((xi - ci) ** 2 for xi, ci in zip(x, self.center)) / self.radius ** 2
        out = np.zeros(x[0].shape)
        inside = r2 < 1.0
        out[inside] = self.scale * np.exp(-1.0 / (1.0 - r2[inside]))
        return out


@dataclass(frozen=True)
class TestFunction:
    """Finite sum of bumps; smooth and compactly supported."""

    __test__ = False  # not a pytest class

    bumps: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not self.bumps:
            raise DomainError("test function needs at least one bump")
        dims = {len(b.center) for b in self.bumps}
        if len(dims) != 1:
            raise DomainError("bumps must share a dimension")

    @classmethod
    def bump(cls, center, radius, scale=1.0):
        return cls((Bump(center, radius, scale),))

    def __add__(self, other):
        return TestFunction(self.bumps + other.bumps)

    @property
    def dim(self) -> int:
        return len(self.bumps[0].center)

    def __call__(self, *coords):
        return sum(b(*coords) for b in self.bumps)

    def box(self):
        """Bounding box as a list of (lo, hi) per coordinate."""
        lo = [min(b.center[k] - b.radius for b in self.bumps) for k in range(self.dim)]
        hi = [max(b.center[k] + b.radius for b in self.bumps) for k in range(self.dim)]
        return list(zip(lo, hi))


# ---------------------------------------------------------------------------
# helpers

def renormalization_exponent(case: CorrelatorCase) -> complex:
    if case.kind == "zero":
        return 0j
    if case.kind == "one":
        return SQRT2 * case.alphas[0]
    return -case.w


def eps_power(eps, rho):
    """eps^rho := exp(rho ln eps) for real eps > 0."""
    return np.exp(rho * np.log(eps))


def hankel_factor(w) -> complex:
    """1 - exp(-2 pi i w), exactly zero at integer w."""
    w = complex(w)
    return complex(np.exp(-1j * math.pi * w) * 2j * specfun.sinpi(w))


def _check_regularized(case: CorrelatorCase):
    w = case.w
    if case.kind == "two" and w.real == 0:
        if w.imag == 0:
            raise HypothesisViolation("Re(w) = 0 needs Im(w) != 0")
        return
    check_contour_hypotheses(case)


# ---------------------------------------------------------------------------
# regularized correlator

_TMIN, _TMAX, _H = -5.5, 1.3, 1.0 / 32


def _u_integrand(case, mu, eps, u):
    d = 1j * eps * u
    z = case.w + d
    return np.exp(_split_neg_gamma(z) + z * math.log(mu) - 0.5 * u * u) * f_shifted(case, d)


def _u_integral(case, mu, eps):
    """int_R g(u) du by exp-sinh on each half line; returns (value, error)."""
    u, wts = exp_sinh_rule(_H, _TMIN, _TMAX)
    vals = (_u_integrand(case, mu, eps, u) + _u_integrand(case, mu, eps, -u)) * wts
    fine = pairwise_sum(vals)
    # every other node is the rule with step 2h
    k0 = int(math.ceil(_TMIN / _H))
    keep = ((np.arange(u.size) + k0) % 2) == 0
    coarse = 2.0 * pairwise_sum(vals[keep])
    return fine, abs(fine - coarse)


def _cft_regularized(w, b1, b2, pref, mu, eps, h=0.2, U=9.0):
    """C_eps for Re(w) = 0 as D_eps + E_eps; array parameters allowed.

    D_eps integrates along Re z = Re w + eps (to the right of the pole of
    Gamma(-z) at 0), E_eps is the Gaussian transform of the residue term.
    """
    w = np.asarray(w, dtype=complex)
    u = np.arange(-U, U + 0.5 * h, h)
    shape = w.shape
    W = w.reshape(-1, 1)
    B1 = np.broadcast_to(np.asarray(b1, dtype=complex), shape).reshape(-1, 1)
    B2 = np.broadcast_to(np.asarray(b2, dtype=complex), shape).reshape(-1, 1)
    d = eps * (1.0 + 1j * u)[None, :]
    z = W + d
    Wb, B1b, B2b, db = np.broadcast_arrays(W, B1, B2, d)
    fz = _f_two(db.ravel(), Wb.ravel(), B1b.ravel(), B2b.ravel()).reshape(db.shape)
    g = np.exp(_split_neg_gamma(z) + z * math.log(mu) + 0.5 * (1.0 + 1j * u[None, :]) ** 2) * fz
    D = h * pairwise_sum(g) / (2 * SQRT_PI)
    E = SQRT_PI / eps * np.exp(w.ravel() ** 2 / (2 * eps * eps))
    res = np.asarray(pref) * (D + E).reshape(shape)
    return res


def regularized_correlator(case: CorrelatorCase, mu: float, eps: float,
                           spec: QuadratureSpec = QuadratureSpec()) -> complex:
    """C_eps = int exp(-sqrt2 w c - eps^2 c^2) C(case, mu, c) dc."""
    if not mu > 0:
        raise DomainError("mu must be positive")
    if not eps > 0:
        raise DomainError("eps must be positive")
    _check_regularized(case)
    if case.kind == "two" and case.w.real == 0:
        if eps >= 0.5:
            raise DomainError("eps must be below 1/2 for the Re(w) = 0 line shift")
        b1, b2 = case.betas
        return complex(_cft_regularized(case.w, b1, b2, case.prefactor, mu, eps))
    val, err = _u_integral(case, mu, eps)
    tol = max(spec.rel_tol, 1e-10)
    if err > tol * abs(val):
        raise QuadratureFailure(f"u-quadrature error {err:.2e} exceeds {tol:.1e} relative")
    return complex(case.prefactor * val / (2 * SQRT_PI))


# ---------------------------------------------------------------------------
# closed forms

def closed_form_limit(case: CorrelatorCase, mu: float) -> complex:
    """Exact value of lim eps^rho C_eps for the four solvable cases."""
    if not mu > 0:
        raise DomainError("mu must be positive")
    w = case.w
    g, G = specfun.gamma, specfun.barnes_g
    if case.kind == "zero":
        return complex(math.e / (4 * math.pi * SQRT2 * mu))
    if case.kind == "one":
        if not -1.0 <= w.real < 0:
            raise HypothesisViolation(f"Re(w) = {w.real} outside [-1, 0)")
        num = (np.exp(w * math.log(4 * SQRT2 * math.pi * mu) - 0.5 * w * (w + 3))
               * G(w + 2) * specfun.sinpi(0.5 * (w + 1) + 0.5) * g(-w) * g(0.5 * w + 1))
        return complex(num / (SQRT_PI * G(-w)))
    if not -0.5 < w.real < 0:
        raise HypothesisViolation(f"Re(w) = {w.real} outside (-1/2, 0)")
    cosw = specfun.sinpi(0.5 * w + 0.5)
    common = g(-w) * g(w + 1) * cosw * g(0.5 * (w + 1))
    if case.kind == "two":
        a1, a2 = case.alphas
        b1, b2 = case.betas
        num = (np.exp(w * math.log(4 * SQRT2 * math.pi * mu) + 2 * a1 * a2 - 0.5 * w * w - 1.5 * w)
               * common * G(w + b1) * G(w + b2))
        return complex(num / (math.sqrt(2 * math.pi) * G(b1) * G(b2)))
    s1, s3 = (SQRT2 * a for a in case.alphas)
    s = s1 + s3
    pre = np.exp(s + 2 * case.alphas[0] * case.alphas[1] - 0.5 * w * (w + 3)
                 + (-s + 0.5 * (w + 1)) * math.log(2.0) + w * math.log(2 * math.pi * mu))
    body = common * G(-s1) * G(-s3) / (2 * SQRT_PI * G(1 + s1) * G(1 + s3))
    return complex(pre * body * nonvanishing_combination(case) / (4 * math.pi))


def nonvanishing_combination(case: CorrelatorCase) -> complex:
    """(1+2 s1) sin(pi s1) + (1+2 s3) sin(pi s3), s_j = sqrt2 alpha_j."""
    if case.kind != "three":
        raise DomainError("defined for the three-point case")
    s1, s3 = (SQRT2 * a for a in case.alphas)
    return complex((1 + 2 * s1) * specfun.sinpi(s1) + (1 + 2 * s3) * specfun.sinpi(s3))


def half_gaussian_moment(w) -> complex:
    """int_R (iu)^w e^(-u^2/2) du = 2^((w+1)/2) cos(pi w/2) Gamma((w+1)/2)."""
    w = complex(w)
    if not w.real > -1:
        raise DomainError("Re(w) must exceed -1")
    return complex(np.exp(0.5 * (w + 1) * math.log(2.0)) * specfun.sinpi(0.5 * w + 0.5)
                   * specfun.gamma(0.5 * (w + 1)))


def ac_zero_point(b: float, mu: float, sign: int = 1) -> complex:
    """Analytic-continuation comparison value for the zero-point function.

    gamma(x) = Gamma(x)/Gamma(1-x).  The base pi mu gamma(-b^2) is negative
    for b in (0, 1); its power uses the principal logarithm (arg = pi).
    ``sign`` selects the overall +i or -i.
    """
    if not 0 < b < 1:
        raise DomainError("b must lie in (0, 1)")
    if not mu > 0:
        raise DomainError("mu must be positive")
    if sign not in (1, -1):
        raise DomainError("sign is +1 or -1")
    b2 = b * b
    if abs(b2 - 0.5) < 4 * np.finfo(float).eps:
        # b = 1/sqrt(2) up to rounding: 1/gamma(-b^-2) vanishes exactly
        return 0j
    q = 1 / b - b
    g_b2 = specfun.gamma(-b2) * specfun.rgamma(1 + b2)
    # 1/gamma(-b^-2) = Gamma(1 + b^-2) / Gamma(-b^-2), zero when b^-2 is an integer
    inv_g_binv = specfun.gamma(1 + 1 / b2) * specfun.rgamma(-1 / b2)
    base = complex(math.pi * mu * g_b2)
    power = np.exp((1 - 1 / b2) * np.log(base))
    val = (sign * 1j * power * (1 + b2) * inv_g_binv / (math.pi ** 3 * q * g_b2)
           * math.exp(q * q - q * q * math.log(4.0)))
    return complex(val)


# ---------------------------------------------------------------------------
# extrapolation

def _basis(eps, model, order, shift=0):
    # with shift m the expansion starts at eps^m and log powers lag by m
    le = np.log(eps)
    cols = [np.ones_like(eps)]
    for j in range(1, order + shift + 1):
        if model == "richardson-log":
            for i in range(max(0, j - shift) + 1):
                cols.append(eps ** j * le ** i)
        else:
            cols.append(eps ** j)
    return np.stack(cols, axis=1)


def vanishing_order(case: CorrelatorCase) -> int:
    """Order of the zero at z = w of f(z) / (z-w)^w e^{(z-w) log(z-w)}.

    Nonzero only for the two-point function when w + beta_j is a
    nonpositive integer -k, where the factor G(z + beta_j) has a zero of
    order k + 1; then the renormalized limit vanishes and the eps
    expansion starts at eps^m.
    """
    if case.kind != "two":
        return 0
    m = 0
    for b in case.betas:
        x = case.w + b
        k = round(x.real)
        if abs(x.imag) < 1e-12 and abs(x.real - k) < 1e-12 and k <= 0:
            m += 1 - k
    return m


def extrapolate(eps, values, model="richardson", order=2, stable_tol=1e-3, shift=0):
    """Least-squares fit of values(eps) and its eps -> 0 intercept.

    Returns (limit, spread) where spread compares the fit with one that
    drops the largest eps.  ExtrapolationUnstable if the spread exceeds
    ``stable_tol`` relative to the limit (floored at 1e-3 of the largest
    value).  ``shift`` is the order at which the expansion starts (see
    ``vanishing_order``); the intercept then should vanish and the spread
    is judged against the largest value.
    """
    eps = np.asarray(eps, dtype=float)
    vals = np.asarray(values, dtype=complex)
    if model is None:
        return complex(vals[-1]), float(abs(vals[-1] - vals[-2]))

    def fit(e, v):
        A = _basis(e, model, order, shift)
        if A.shape[1] > A.shape[0]:
            raise ExtrapolationUnstable("more fit parameters than eps values")
        # scale columns for conditioning
        norms = np.linalg.norm(A, axis=0)
        coef, *_ = np.linalg.lstsq(A / norms, v, rcond=None)
        return coef[0] / norms[0]

    full = fit(eps, vals)
    trimmed = fit(eps[1:], vals[1:])
    spread = float(abs(full - trimmed))
    data = float(np.max(np.abs(vals)))
    if shift > 0:
        # the intercept should vanish: judge against the size of the data
        scale = data
    else:
        scale = max(abs(full), data * 1e-3)
    if spread > stable_tol * scale:
        raise ExtrapolationUnstable(
            f"extrapolants disagree: {complex(full)} vs {complex(trimmed)}")
    return complex(full), spread


def renormalized_sequence(case: CorrelatorCase, mu: float, sched: RegularizationSchedule,
                          prescription: ContourPrescription = ContourPrescription(),
                          spec: QuadratureSpec = QuadratureSpec()):
    """eps^rho C_eps (or its Hankel version) along the schedule."""
    rho = renormalization_exponent(case)
    eps = np.array(sched.epsilons)
    if prescription.kind == "hankel":
        raw = np.array(hankel_sequence(case, mu, sched.epsilons, spec))
    else:
        raw = np.array([regularized_correlator(case, mu, e, spec) for e in eps])
    return eps, eps_power(eps, rho) * raw


def renormalized_limit(case: CorrelatorCase, mu: float,
                       sched: RegularizationSchedule | None = None,
                       prescription: ContourPrescription = ContourPrescription(),
                       spec: QuadratureSpec = QuadratureSpec(), stable_tol: float = 1e-3,
                       return_spread: bool = False):
    """Extrapolated lim eps^rho C_eps with the case's renormalization power."""
    if sched is None:
        sched = RegularizationSchedule.default(case)
    if case.kind == "two" and case.w.real == 0:
        raise HypothesisViolation("Re(w) = 0: the limit is a distribution, use two_point_pairing")
    eps, seq = renormalized_sequence(case, mu, sched, prescription, spec)
    val, spread = extrapolate(eps, seq, sched.extrapolation, sched.order, stable_tol,
                              vanishing_order(case))
    return (val, spread) if return_spread else val


# ---------------------------------------------------------------------------
# Hankel contour

def _half_line_kernel(k, eps):
    """int_0^inf exp(-k c - eps^2 c^2) dc in mpmath."""
    x = k / (2 * eps)
    return mpmath.sqrt(mpmath.pi) / (2 * eps) * mpmath.exp(x * x) * mpmath.erfc(x)


def _check_vertical(case):
    w = case.w
    if w.imag == 0 and w.real >= 0 and w.real == round(w.real):
        raise PoleAt("w is a nonnegative integer")


def vertical_segment(case: CorrelatorCase, mu: float) -> complex:
    """-i int_0^{sqrt2 pi} e^{-sqrt2 i w t} C(case, mu, it) dt, termwise in n."""
    _check_vertical(case)
    fac = hankel_factor(case.w)
    w = mpmath.mpc(case.w)
    (s,), _ = _series(case, math.log(mu), [lambda n: 1 / (mpmath.sqrt(2) * (n - w))])
    return complex(fac * case.prefactor * s)


def vertical_segment_quadrature(case: CorrelatorCase, mu: float, rel_tol: float = 1e-12) -> complex:
    """The same segment by direct Gauss-Legendre quadrature in t."""
    _check_vertical(case)
    w = case.w

    def integrand(t):
        # C(mu, it) at every node from one series pass: x^n picks up e^{sqrt2 i t n}
        weights = [lambda n, t=mpmath.mpf(ti): mpmath.expj(mpmath.sqrt(2) * t * n) for ti in t]
        sums, _ = _series(case, math.log(mu), weights)
        return np.exp(-SQRT2 * 1j * w * t) * case.prefactor * np.array(sums)

    val, _ = composite_gl(integrand, 0.0, SQRT2 * math.pi, 2, rel_tol, 20000, order=24,
                          l1_scale=True)
    # near x = -mu the integrand can exceed the result by many orders of
    # magnitude; only at integer w is the segment exactly zero, and then the
    # L1-relative certificate is the meaningful one
    x, wx = panel_nodes(0.0, SQRT2 * math.pi, 4, 24)
    l1 = float(np.sum(np.abs(integrand(x)) * wx))
    if hankel_factor(w) != 0 and l1 > 1e4 * abs(val):
        raise QuadratureFailure(
            f"segment integrand cancels from {l1:.2e} to {abs(val):.2e}; use vertical_segment")
    return complex(-1j * val)


def half_line_difference(case: CorrelatorCase, mu: float, epsilons,
                         spec: QuadratureSpec = QuadratureSpec()):
    """N_0 - N_eps for each eps, N_eps = int_{-inf}^0 e^{-sqrt2 w c - eps^2 c^2} C(c) dc / P.

    Mellin-Barnes form: on the contour line the c-integral of x^z is
    mu^z K_eps(k) with k = sqrt2 (z - w), so only the kernel difference
    1/k - K_eps(k) ~ 2 eps^2 / k^3 enters.  Everything stays in double
    precision, unlike the termwise sum whose terms can cancel heavily.
    """
    x0 = default_line(case)
    w = case.w
    eps = np.asarray(epsilons, dtype=float).reshape(-1, 1)
    lm = math.log(mu)

    def kernel_diff(k):
        return 1 / k - SQRT_PI / (2 * eps) * wofz(1j * k / (2 * eps))

    def integrand(y):
        z = x0 + 1j * y
        k = SQRT2 * ((x0 - w.real) + 1j * (y - w.imag))
        return (mb_integrand(case, x0, y) * np.exp(z * lm))[None, :] * kernel_diff(k[None, :])

    Y = spec.truncation_Y
    panels = max(2, int(math.ceil(2 * Y / min(2.0, math.pi / (abs(lm) + 1.0)))))
    val, _ = composite_gl(integrand, -Y, Y, panels, spec.rel_tol, spec.max_evals,
                          abs_floor=1e-15)
    out = val / (2 * math.pi)
    if case.kind == "two" and w.real == 0:
        # residue of Gamma(-z) at z = 0 sits left of the line q
        out = out + kernel_diff(np.array([-SQRT2 * w]))[:, 0]
    return out


def hankel_sequence(case: CorrelatorCase, mu: float, epsilons,
                    spec: QuadratureSpec = QuadratureSpec(), method: str = "contour"):
    """Hankel-regularized values for several eps.

    tilde C_eps = (1 - e^{-2 pi i w}) (C_eps - P N_eps) + V with the vertical
    segment V = (1 - e^{-2 pi i w}) P N_0.  ``method="contour"`` takes
    N_0 - N_eps from its Mellin-Barnes form; ``"series"`` sums N_eps and
    N_0 termwise in mpmath (one pass for all eps).
    """
    _check_vertical(case)
    # both the horizontal combination and the segment carry the factor,
    # which is exactly zero at integer w
    fac = hankel_factor(case.w)
    P = case.prefactor
    Cs = [regularized_correlator(case, mu, e, spec) for e in epsilons]
    if method == "contour":
        diff = half_line_difference(case, mu, epsilons, spec)
        return [complex(fac * (C + P * d)) for C, d in zip(Cs, diff)]
    if method != "series":
        raise DomainError(f"unknown method {method!r}")
    w = mpmath.mpc(case.w)
    sq2 = mpmath.sqrt(2)
    weights = [lambda n: 1 / (sq2 * (n - w))]
    for e in epsilons:
        weights.append(lambda n, e=mpmath.mpf(e): _half_line_kernel(sq2 * (n - w), e))
    sums, _ = _series(case, math.log(mu), weights)
    V = fac * P * sums[0]
    return [complex(fac * (C - P * neg) + V) for C, neg in zip(Cs, sums[1:])]


def hankel_correlator(case: CorrelatorCase, mu: float, eps: float,
                      spec: QuadratureSpec = QuadratureSpec(), method: str = "contour") -> complex:
    """(1 - e^{-2 pi i w}) int_0^inf (...) dc plus the vertical segment."""
    return hankel_sequence(case, mu, [eps], spec, method)[0]


# ---------------------------------------------------------------------------
# distributional pairings

def _gl_nodes_1d(lo, hi, width, order=16):
    panels = max(1, int(math.ceil((hi - lo) / width)))
    return panel_nodes(lo, hi, panels, order)


def heaviside_pairing(phi: TestFunction, eps: float) -> complex:
    """int phi(x) int_0^inf e^{itx - eps^2 t^2} dt dx."""
    if phi.dim != 1:
        raise DomainError("heaviside pairing needs a test function on R")
    if not eps > 0:
        raise DomainError("eps must be positive")
    total = 0j
    for b in phi.bumps:
        lo, hi = b.center[0] - b.radius, b.center[0] + b.radius
        x, wx = _gl_nodes_1d(lo, hi, min(eps / 2, (hi - lo) / 8))
        inner = SQRT_PI / (2 * eps) * wofz(x / (2 * eps))
        total += pairwise_sum(b(x) * inner * wx)
    return complex(total)


def heaviside_limit(phi: TestFunction) -> complex:
    """pi phi(0) + i int_0^inf (phi(x) - phi(-x))/x dx."""
    R = max(abs(b.center[0]) + b.radius for b in phi.bumps)
    x, wx = _gl_nodes_1d(0.0, R, R / 64)
    odd = pairwise_sum((phi(x) - phi(-x)) / x * wx)
    return complex(math.pi * float(phi(0.0)) + 1j * odd)


def fourier_abs_integral(phi: TestFunction, T: float = 2000.0) -> float:
    """int_0^T |int phi(x) e^{itx} dx| dt.

    The bump transform decays only like exp(-sqrt(t)), so the integral is
    cut at T; the result is a lower estimate of the full integral, which
    makes |pairing| <= bound a stricter check.
    """
    lo, hi = phi.box()[0]
    x, wx = _gl_nodes_1d(lo, hi, (hi - lo) / 64)
    fx = phi(x) * wx
    t, wt = _gl_nodes_1d(0.0, T, math.pi / max(abs(lo), abs(hi)) / 4)
    total = 0.0
    for k in range(0, t.size, 4096):
        tk = t[k:k + 4096]
        total += float(np.sum(np.abs(np.exp(1j * np.outer(tk, x)) @ fx) * wt[k:k + 4096]))
    return total


def delta_target(phi: TestFunction) -> float:
    """pi int e^{1/4 + 2 P^2} phi(P, -P) dP."""
    if phi.dim != 2:
        raise DomainError("needs a test function on R^2")
    total = 0.0
    for b in phi.bumps:
        # the anti-diagonal meets the support for P within radius of the
        # projection of the center
        p0 = 0.5 * (b.center[0] - b.center[1])
        x, wx = _gl_nodes_1d(p0 - b.radius, p0 + b.radius, b.radius / 16)
        total += float(np.sum(np.exp(0.25 + 2 * x * x) * b(x, -x) * wx))
    return math.pi * total


def _cft_parameters(p1, p2):
    a1 = -0.5 / SQRT2 + 1j * np.asarray(p1, dtype=float)
    a2 = -0.5 / SQRT2 + 1j * np.asarray(p2, dtype=float)
    w = -SQRT2 * 1j * (np.asarray(p1) + np.asarray(p2))
    return w, 1 + SQRT2 * a1, 1 + SQRT2 * a2, np.exp(2 * a1 * a2)


def _cft_half_line_difference(w, b1, b2, pref, mu, eps, q=0.5, h=0.125, Y=30.0):
    """N_0 - N_eps where N_eps = int_{-inf}^0 e^{-sqrt2 w c - eps^2 c^2} C(c) dc.

    Uses the Mellin-Barnes form on Re z = q; the kernel difference
    1/k - K_eps(k), k = sqrt2 (z - w), is what remains of the c-integral.
    The constant term of the representation contributes the n = 0 piece.
    """
    y = np.arange(-Y, Y + 0.5 * h, h)
    W = w.reshape(-1, 1)
    z = q + 1j * y[None, :]
    d = z - W
    Wb, B1b, B2b, db = np.broadcast_arrays(W, b1.reshape(-1, 1), b2.reshape(-1, 1), d)
    fz = _f_two(db.ravel(), Wb.ravel(), B1b.ravel(), B2b.ravel()).reshape(db.shape)
    k = SQRT2 * d
    kern = 1 / k - SQRT_PI / (2 * eps) * wofz(1j * k / (2 * eps))
    g = np.exp(_split_neg_gamma(z) + z * math.log(mu)) * fz * kern
    mb = h * pairwise_sum(g) / (2 * math.pi)
    k0 = -SQRT2 * w.ravel()
    const = SQRT_PI / (2 * eps) * wofz(1j * k0 / (2 * eps))
    return pref.ravel() * mb, const, k0


def two_point_pairing(phi: TestFunction, eps: float, mu: float = 1.0, hankel: bool = False,
                      step: float | None = None) -> complex:
    """iint C_eps(P1, P2) phi(P1, P2) dP1 dP2 on a tensor trapezoid grid.

    C_eps is the regularized two-point function at alpha_j = -1/(2 sqrt2) + i P_j.
    With ``hankel`` the Hankel-contour version is paired instead.
    """
    if phi.dim != 2:
        raise DomainError("needs a test function on R^2")
    if not 0 < eps < 0.5:
        raise DomainError("eps must lie in (0, 1/2)")
    if step is None:
        step = eps / 3
    if (eps / SQRT2) / step < 2:
        raise GridTooCoarse(f"step {step} does not resolve the kernel width {eps / SQRT2:.3g}")
    (x0, x1), (y0, y1) = phi.box()
    nx = int(math.ceil((x1 - x0) / step))
    ny = int(math.ceil((y1 - y0) / step))
    hx, hy = (x1 - x0) / nx, (y1 - y0) / ny
    xs = x0 + hx * np.arange(nx + 1)
    ys = y0 + hy * np.arange(ny + 1)
    def row(p1):
        vals = phi(np.full(ys.shape, p1), ys)
        on = vals != 0
        if not np.any(on):
            return 0j
        p2 = ys[on]
        w, b1, b2, pref = _cft_parameters(np.full(p2.shape, p1), p2)
        C = _cft_regularized(w, b1, b2, pref, mu, eps)
        if hankel:
            # (1 - e^{-2 pi i w}) (C_eps + P (N_0 - N_eps)); the n = 0 piece of
            # N_0 is P/k0 and fac/k0 stays finite at a = 0
            mb, const, k0 = _cft_half_line_difference(w, b1, b2, pref, mu, eps)
            a = -SQRT2 * (p1 + p2)          # w = i a
            fac = -np.expm1(2 * math.pi * a)  # 1 - e^{-2 pi i w}
            safe = np.where(a == 0, 1.0, k0)
            fac_over_k0 = np.where(a == 0, 2 * math.pi / (SQRT2 * 1j), fac / safe)
            C = fac * (C + mb - pref * const) + pref * fac_over_k0
        return pairwise_sum(C * vals[on])

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        row_sums = list(pool.map(row, xs))  # ordered, so the reduction is reproducible
    return complex(hx * hy * pairwise_sum(np.array(row_sums)))
