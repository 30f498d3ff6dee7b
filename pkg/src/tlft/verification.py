"""Verification suites run by ``tlft verify``.

Each suite appends values and one assertion per property to a report
(anything with ``add(name, value, provenance, error=None, **params)`` and
``check(name, passed, **detail)``).  Independent oracles come from scipy
and mpmath quadrature; the library itself never calls them.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np
from scipy import integrate

from . import coulomb, specfun, zeromode
from .coulomb import SQRT2

_SEED = 20240611


def _rel(a, b):
    return abs(complex(a) - complex(b)) / abs(complex(b))


def _panel():
    from .cli import load_panel, panel_cases
    p = load_panel()
    return p, panel_cases(p)


# ---------------------------------------------------------------------------
# theorems

def _limit_row(rep, name, case, mu, tol):
    lim, spread = zeromode.renormalized_limit(case, mu, return_spread=True)
    exact = zeromode.closed_form_limit(case, mu)
    rep.add(f"{name} limit", lim, "extrapolation", spread, case=case.label(), mu=mu)
    rep.add(f"{name} closed form", exact, "closed-form", case=case.label(), mu=mu)
    rel = _rel(lim, exact)
    rep.check(f"{name}: limit matches closed form", rel < tol, case=case.label(), mu=mu,
              rel_diff=rel, rtol=tol)
    return lim


def _hankel_row(rep, name, case, mu, lim, tol):
    hl, spread = zeromode.renormalized_limit(case, mu, prescription=zeromode.ContourPrescription("hankel"),
                                             return_spread=True)
    fac = zeromode.hankel_factor(case.w)
    rep.add(f"{name} hankel limit", hl, "extrapolation", spread, case=case.label(), mu=mu)
    rep.add(f"{name} hankel factor", fac, "closed-form", case=case.label())
    rel = _rel(hl / lim, fac)
    rep.check(f"{name}: hankel ratio is 1 - exp(-2 pi i w)", rel < tol, case=case.label(), mu=mu,
              rel_diff=rel, rtol=tol)


def suite_theorems(rep, mu=None, tolerances=None):
    mu = 1.0 if mu is None else mu
    tol = (tolerances or {}).get("rtol")
    panel, cases = _panel()

    _limit_row(rep, "zero-point", cases["zero"], mu, tol or 1e-4)

    zero = cases["zero"]
    eps = zeromode.RegularizationSchedule.default().epsilons
    vals = zeromode.hankel_sequence(zero, mu, eps)
    worst = max(abs(v) for v in vals)
    rep.add("zero-point hankel max", worst, "quadrature", mu=mu, n_eps=len(eps))
    rep.check("zero-point: hankel value vanishes", worst < 1e-9, mu=mu, max_abs=worst)

    for k, case in enumerate(cases["one"]):
        lim = _limit_row(rep, f"one-point[{k}]", case, mu, tol or 1e-3)
        if k == 0:
            _hankel_row(rep, "one-point[0]", case, mu, lim, tol or 1e-3)

    for k, case in enumerate(cases["two"]):
        _limit_row(rep, f"two-point[{k}]", case, mu, tol or 1e-3)

    deg = cases["two_degenerate"]
    exact = zeromode.closed_form_limit(deg, mu)
    e, seq = zeromode.renormalized_sequence(deg, mu, zeromode.RegularizationSchedule.default())
    lim, spread = zeromode.extrapolate(e, seq, "richardson-log", 2, shift=zeromode.vanishing_order(deg))
    scale = float(np.max(np.abs(seq)))
    rep.add("two-point degenerate limit", lim, "extrapolation", spread, case=deg.label(), mu=mu)
    rep.add("two-point degenerate closed form", exact, "closed-form", case=deg.label(), mu=mu)
    rep.check("two-point degenerate: limit vanishes", exact == 0 and abs(lim) <= 1e-3 * scale,
              closed_form=exact, abs_limit=abs(lim), sequence_scale=scale)

    three = cases["three"]
    lim = _limit_row(rep, "three-point", three, mu, tol or 1e-3)
    rep.check("three-point: limit nonzero", abs(lim) > 0 and abs(zeromode.closed_form_limit(three, mu)) > 0,
              abs_limit=abs(lim))
    comb = zeromode.nonvanishing_combination(three)
    rep.add("three-point nonvanishing combination", comb, "closed-form", case=three.label())
    s = [(SQRT2 * a).real for a in three.alphas]
    in_strip = all(-1 < x < -0.5 for x in s)
    rep.check("three-point: positivity certificate", (not in_strip) or comb.real > 0,
              re_combination=comb.real, in_strip=in_strip)
    _hankel_row(rep, "three-point", three, mu, lim, tol or 1e-3)

    ac = zeromode.ac_zero_point(1 / SQRT2, mu)
    rep.add("analytic continuation value", ac, "closed-form", b=1 / SQRT2, mu=mu, branch="+i")
    rep.check("analytic continuation vanishes at b^2 = 1/2", ac == 0, value=ac)


# ---------------------------------------------------------------------------
# identities

def _radial_moment(alpha, beta):
    """2 pi int_0^inf r^(alpha+1) (1+r^2)^(-beta) dr by scipy quad."""
    def part(fn):
        f = lambda r: fn(2 * math.pi * np.exp((alpha + 1) * math.log(r) - beta * math.log1p(r * r)))
        return sum(integrate.quad(f, a, b, epsabs=0, epsrel=1e-12, limit=200)[0]
                   for a, b in ((0, 1), (1, np.inf)))
    return complex(part(np.real), part(np.imag))


def suite_identities(rep, mu=None, tolerances=None):
    tol = (tolerances or {}).get("rtol")

    for n, a, b in ((1, 1, 1), (2, 1, 1), (3, 1.3 + 0.4j, 0.7), (5, 0.4 - 0.2j, 2.5 + 1j)):
        lhs, rhs = coulomb.gamma_sum_identity(n, a, b)
        rep.add("gamma_sum lhs", lhs, "closed-form", n=n, a=complex(a), b=complex(b))
        rep.add("gamma_sum rhs", rhs, "closed-form", n=n, a=complex(a), b=complex(b))
        rel = _rel(lhs, rhs)
        rep.check(f"gamma_sum_identity n={n}", rel < (tol or 1e-10), rel_diff=rel)

    for alpha, beta in ((0.0, 2.0), (2.0, 3.0), (1.5, 2.5), (-1.2, 1.0), (0.5 + 0.3j, 2.0 - 0.4j)):
        val = coulomb.disk_moment(alpha, beta)
        ref = _radial_moment(complex(alpha), complex(beta))
        rep.add("disk_moment", val, "closed-form", alpha=complex(alpha), beta=complex(beta))
        rep.add("disk_moment radial quadrature", ref, "quadrature", alpha=complex(alpha), beta=complex(beta))
        rel = _rel(val, ref)
        rep.check(f"disk_moment({alpha}, {beta}) vs radial quadrature", rel < (tol or 1e-8), rel_diff=rel)

    mpmath.mp.dps = 20
    for w in (-0.8, -0.5 + 0.7j, 0.0, 0.3 - 0.4j, 1.0, 1.5 + 1j, 1.9):
        val = zeromode.half_gaussian_moment(w)
        # u = +-s^m makes the endpoint behaviour s^(m(w+1)-1) regular
        m = math.ceil(1 / (complex(w).real + 1))

        def f(s, m=m, w=w):
            u = s ** m
            jac = m * s ** (m - 1)
            return (mpmath.power(1j * u, w) + mpmath.power(-1j * u, w)) * mpmath.exp(-u * u / 2) * jac
        ref = complex(mpmath.quad(f, [0, 1, mpmath.inf]))
        rep.add("half_gaussian_moment", val, "closed-form", w=complex(w))
        rep.add("half_gaussian_moment quadrature", ref, "quadrature", w=complex(w))
        err = abs(val - ref) / max(abs(ref), 1.0)
        rep.check(f"half_gaussian_moment w={w}", err < (tol or 1e-9), err=err)

    for y, e in ((0.0, 0.5), (0.3, 0.2), (1.0, 1.0), (0.05, 0.1)):
        # int e^{sqrt2 i c y - eps^2 c^2} dc, the odd part integrates to zero
        ref = 2 * integrate.quad(lambda c: math.cos(SQRT2 * c * y) * math.exp(-e * e * c * c),
                                 0, np.inf, epsabs=0, epsrel=1e-13, limit=400)[0]
        val = math.sqrt(math.pi) / e * math.exp(-y * y / (2 * e * e))
        rep.add("gaussian transform", val, "closed-form", y=y, eps=e)
        err = abs(val - ref) / max(abs(ref), 1.0)
        rep.check(f"gaussian transform y={y} eps={e}", err < (tol or 1e-10), err=err)

    sym = zeromode.TestFunction.bump((0.0,), 0.5)
    anti = zeromode.TestFunction.bump((0.3,), 0.25) + zeromode.TestFunction.bump((-0.3,), 0.25, -1.0)
    for name, phi in (("symmetric", sym), ("antisymmetric", anti)):
        lim = zeromode.heaviside_limit(phi)
        bound = zeromode.fourier_abs_integral(phi)
        rep.add(f"heaviside limit {name}", lim, "quadrature")
        rep.add(f"heaviside fourier bound {name}", bound, "quadrature")
        vals = []
        for e in (0.1, 0.01, 0.001):
            v = zeromode.heaviside_pairing(phi, e)
            vals.append(v)
            rep.add(f"heaviside pairing {name}", v, "quadrature", eps=e)
        rel = _rel(vals[-1], lim)
        rep.check(f"heaviside {name}: pairing approaches limit", rel < (tol or 1e-3), rel_diff=rel)
        rep.check(f"heaviside {name}: bounded by int |phi hat|", max(abs(v) for v in vals) <= bound,
                  max_abs=max(abs(v) for v in vals), bound=bound)
    rep.check("heaviside symmetric: limit is pi phi(0)",
              _rel(zeromode.heaviside_limit(sym), math.pi * float(sym(0.0))) < 1e-14)
    rep.check("heaviside antisymmetric: limit is imaginary",
              zeromode.heaviside_limit(anti).real == 0.0)


# ---------------------------------------------------------------------------
# special functions

def _random_right_half(rng, n):
    return rng.uniform(0.05, 20, n) + 1j * rng.uniform(-20, 20, n)


def suite_specfun(rep, mu=None, tolerances=None):
    tol = (tolerances or {}).get("rtol")
    rng = np.random.default_rng(_SEED)
    z = _random_right_half(rng, 1000)

    lg = np.array([specfun.log_gamma(x) for x in z])
    lg1 = np.array([specfun.log_gamma(x + 1) for x in z])
    err = float(np.max(np.abs(lg1 - lg - np.log(z))))
    rep.add("log_gamma recurrence max error", err, "closed-form", samples=z.size)
    rep.check("log_gamma recurrence", err < (tol or 1e-11), max_err=err)

    th = np.array([specfun.log_barnes_g(x) for x in z])
    th1 = np.array([specfun.log_barnes_g(x + 1) for x in z])
    err = float(np.max(np.abs(th1 - th - lg)))
    rep.add("log_barnes_g recurrence max error", err, "closed-form", samples=z.size)
    rep.check("log_barnes_g recurrence", err < (tol or 1e-10), max_err=err)

    worst = 0.0
    for n in range(1, 13):
        exact = math.prod(math.factorial(k) for k in range(1, n))
        worst = max(worst, _rel(specfun.barnes_g(n + 1), exact))
    rep.add("superfactorial max rel error", worst, "closed-form", n_max=12)
    rep.check("barnes_g superfactorial", worst < (tol or 1e-12), max_rel=worst)

    zz = 0.3 + 0.2j
    worst = 0.0
    for _ in range(50):
        a, b, c = (complex(rng.uniform(-3, 3), rng.uniform(-2, 2)) for _ in range(3))
        c = c + 2.0  # keep c away from the poles
        lhs = specfun.hyp2f1(a, b, c, zz)
        rhs = (1 - zz) ** (-a) * specfun.hyp2f1(a, c - b, c, zz / (zz - 1))
        worst = max(worst, _rel(lhs, rhs))
    rep.add("pfaff max rel error", worst, "closed-form", samples=50, z=zz)
    rep.check("hyp2f1 Pfaff transformation", worst < (tol or 1e-9), max_rel=worst)

    mpmath.mp.dps = 25
    worst = 0.0
    for a, b, c, x in ((0.5, 0.7, 2.1, 0.4 + 0.3j), (1.0 + 0.5j, 1.5, 3.0 - 0.2j, -0.6),
                       (-1.3, 0.4 + 0.2j, 1.9, 0.1 - 0.8j), (2.0, 1.0, 2.5, 0.9)):
        a, b, c, x = (mpmath.mpc(v) for v in (a, b, c, x))
        integrand = lambda t: t ** (b - 1) * (1 - t) ** (c - b - 1) * (1 - x * t) ** (-a)
        ref = mpmath.quad(integrand, [0, 0.5, 1]) * mpmath.gamma(c) / (mpmath.gamma(b) * mpmath.gamma(c - b))
        val = specfun.hyp2f1(complex(a), complex(b), complex(c), complex(x))
        worst = max(worst, _rel(val, complex(ref)))
    rep.add("euler integral max rel error", worst, "quadrature")
    rep.check("hyp2f1 Euler integral", worst < (tol or 1e-8), max_rel=worst)

    # |Gamma(z1)/Gamma(z2)| <= exp((C1 + C2)|z1 - z2| + C2 C3) with C1 = max |log z|,
    # C2 = max 1/|z| along the segment and C3 = 1
    ok = True
    for _ in range(200):
        z1, z2 = _random_right_half(rng, 2) + 0.5
        seg = z2 + (z1 - z2) * np.linspace(0, 1, 257)
        c1 = float(np.max(np.abs(np.log(seg))))
        c2 = float(np.max(1 / np.abs(seg)))
        lhs = (specfun.log_gamma(z1) - specfun.log_gamma(z2)).real
        ok &= lhs <= (c1 + c2) * abs(z1 - z2) + c2
    rep.check("gamma ratio growth bound", ok, samples=200)

    # |Gamma(-x - iy)| <= C1 (2+|y|)^C2 exp(-|y| arg(1+i|y|)), C1 fitted on a coarse grid
    ok = True
    for x in (-0.9, -0.5, -0.1):
        c2 = -x - 0.5
        shape = lambda y: (2 + y) ** c2 * np.exp(-y * np.arctan(y))
        mod = lambda y: np.abs(np.array([specfun.gamma(complex(-x, -t)) for t in y]))
        coarse = np.linspace(0, 100, 51)
        c1 = float(np.max(mod(coarse) / shape(coarse)))
        fine = np.linspace(0, 150, 1501)
        ok &= bool(np.all(mod(fine) <= 1.01 * c1 * shape(fine)))
        rep.add("gamma modulus fitted C1", c1, "quadrature", x=x, C2=c2)
    rep.check("gamma modulus decay bound", ok)


# ---------------------------------------------------------------------------
# distributions

def suite_distributions(rep, mu=None, tolerances=None):
    tol = (tolerances or {}).get("rtol")
    panel, _ = _panel()
    cfg = panel["pairing"]
    mu = cfg["mu"] if mu is None else mu
    eps = cfg["eps"]
    on = zeromode.TestFunction.bump(tuple(cfg["on_diagonal"]["center"]), cfg["on_diagonal"]["radius"])
    off = zeromode.TestFunction.bump(tuple(cfg["off_diagonal"]["center"]), cfg["off_diagonal"]["radius"])

    target = zeromode.delta_target(on)
    val = zeromode.two_point_pairing(on, eps, mu)
    rep.add("delta target", target, "quadrature")
    rep.add("pairing on-diagonal", val, "quadrature", eps=eps, mu=mu)
    rel = _rel(val, target)
    rep.check("pairing on-diagonal within 3% of delta target", rel < (tol or 0.03), rel_diff=rel)

    val = zeromode.two_point_pairing(off, eps, mu)
    rep.add("pairing off-diagonal", val, "quadrature", eps=eps, mu=mu)
    rep.check("pairing off-diagonal vanishes", abs(val) < 1e-3, abs_value=abs(val))

    for name, phi in (("on-diagonal", on), ("off-diagonal", off)):
        val = zeromode.two_point_pairing(phi, eps, mu, hankel=True)
        rep.add(f"hankel pairing {name}", val, "quadrature", eps=eps, mu=mu)
        rep.check(f"hankel pairing {name} vanishes", abs(val) < 1e-3, abs_value=abs(val))
