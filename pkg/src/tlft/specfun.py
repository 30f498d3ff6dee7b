"""Complex special functions on the cut plane.

Everything here is built from recurrences plus asymptotic expansions:

* ``log_gamma`` is the analytic logarithm of Gamma on C \\ (-inf, 0], real on
  the positive axis.  Powers of Gamma are always ``exp(w * log_gamma(z))``.
* ``log_barnes_g`` is the analytic logarithm of the Barnes G-function on the
  same domain; ``barnes_g`` is the entire function itself.
* ``hyp2f1`` is the Gauss series with Pfaff and 1-z connection formulas.

Array inputs are accepted everywhere and evaluated elementwise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .errors import DomainCut, DomainRadius, PoleAt

EULER_GAMMA = 0.57721566490153286060651209
LOG_2PI = math.log(2.0 * math.pi)
# zeta'(-1) = 1/12 - log(Glaisher's constant)
ZETA_PRIME_M1 = -0.16542114370045092921

_SHIFT = 16.0  # recurrence pushes Re(z) past this before using asymptotics
_POLE_TOL = 1e-8


_BERNOULLI = [Fraction(1)]


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m (convention B_1 = -1/2)."""
    b = _BERNOULLI
    # extend the shared table with the recurrence sum_j C(k+1, j) B_j = 0
    for k in range(len(b), m + 1):
        acc = Fraction(0)
        binom = 1
        for j in range(k):
            acc += binom * b[j]
            binom = binom * (k + 1 - j) // (j + 1)
        b.append(-acc / (k + 1))
    return b[m]


# Stirling coefficients B_2k / (2k(2k-1)) and the Barnes analogue
# B_{2k+2} / (4k(k+1)), both used with Horner in 1/z^2.
_LG_COEF = np.array([float(bernoulli(2 * k)) / (2 * k * (2 * k - 1)) for k in range(1, 12)])
_LBG_COEF = np.array([float(bernoulli(2 * k + 2)) / (4 * k * (k + 1)) for k in range(1, 11)])
_PSI_COEF = np.array([float(bernoulli(2 * k)) / (2 * k) for k in range(1, 12)])


def _prep(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def _out(arr, scalar):
    return complex(arr) if scalar else arr


def _on_cut(z):
    return (z.imag == 0) & (z.real <= 0)


def _check_cut(z, name="argument"):
    if np.any(_on_cut(z)):
        bad = z[_on_cut(z)].ravel()[0] if z.ndim else z
        raise DomainCut(f"{name} {complex(bad)} lies on the cut (-inf, 0]")


def _near_nonpos_int(z, tol=_POLE_TOL):
    r = np.round(z.real)
    return (r <= 0) & (np.abs(z.real - r) < tol) & (np.abs(z.imag) < tol)


def _is_nonpos_int(z):
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def _horner(coef, x):
    acc = np.zeros_like(x)
    for c in coef[::-1]:
        acc = acc * x + c
    return acc


def _shift_counts(z):
    return np.ceil(np.maximum(0.0, _SHIFT - z.real)).astype(int)


def _stirling(z):
    """Asymptotic log Gamma for Re(z) >= 16."""
    inv = 1.0 / z
    series = inv * _horner(_LG_COEF, inv * inv)
    return (z - 0.5) * np.log(z) - z + 0.5 * LOG_2PI + series


def _log_g1(x):
    """Asymptotic log G(x+1) for Re(x) >= 16."""
    inv2 = 1.0 / (x * x)
    lx = np.log(x)
    series = inv2 * _horner(_LBG_COEF, inv2)
    return (0.5 * x * x * lx - 0.75 * x * x + 0.5 * x * LOG_2PI
            - lx / 12.0 + ZETA_PRIME_M1 + series)


def _log_gamma_raw(z):
    n = _shift_counts(z)
    acc = np.zeros_like(z)
    for k in range(int(n.max(initial=0))):
        acc = acc + np.where(k < n, np.log(z + k), 0.0)
    return _stirling(z + n) - acc


def log_gamma(z):
    """Analytic log Gamma on C \\ (-inf, 0], real on the positive axis."""
    arr, scalar = _prep(z)
    _check_cut(arr)
    return _out(_log_gamma_raw(arr), scalar)


def gamma_power(z, w):
    """Gamma(z)^w defined as exp(w * log_gamma(z))."""
    arr, scalar = _prep(z)
    _check_cut(arr)
    w = np.asarray(w, dtype=complex)
    res = np.exp(w * _log_gamma_raw(arr))
    return _out(res, scalar and w.ndim == 0)


def sinpi(z):
    """sin(pi z) with exact zeros at the integers."""
    arr, scalar = _prep(z)
    s, c = _sincospi_real(arr.real)
    y = np.pi * arr.imag
    return _out(s * np.cosh(y) + 1j * c * np.sinh(y), scalar)


def _sincospi_real(x):
    r = x - 2.0 * np.round(x / 2.0)
    rs = np.where(r > 0.5, 1.0 - r, np.where(r < -0.5, -1.0 - r, r))
    s = np.sin(np.pi * rs)
    c = np.sin(np.pi * (0.5 - np.abs(r)))
    return s, c


def _log_sinpi(z):
    """A logarithm of sin(pi z); the branch is irrelevant to callers."""
    out = np.empty_like(z)
    mid = np.abs(z.imag) < 5.0
    if np.any(mid):
        out[mid] = np.log(sinpi(z[mid]))
    up = z.imag >= 5.0
    if np.any(up):
        zu = z[up]
        out[up] = np.log(0.5j) - 1j * np.pi * zu + np.log1p(-np.exp(2j * np.pi * zu))
    dn = z.imag <= -5.0
    if np.any(dn):
        zd = np.conj(z[dn])
        out[dn] = np.conj(np.log(0.5j) - 1j * np.pi * zd + np.log1p(-np.exp(2j * np.pi * zd)))
    return out


def _log_gamma_anywhere(z):
    """Some logarithm of Gamma(z) for any non-pole z (branch unspecified)."""
    z = np.atleast_1d(z)
    out = np.empty_like(z)
    right = z.real >= 0.5
    if np.any(right):
        out[right] = _log_gamma_raw(z[right])
    left = ~right
    if np.any(left):
        zl = z[left]
        out[left] = math.log(math.pi) - _log_sinpi(zl) - _log_gamma_raw(1.0 - zl)
    return out


def gamma(z):
    """Gamma(z) on the whole plane minus the poles."""
    arr, scalar = _prep(z)
    if np.any(_is_nonpos_int(arr)):
        raise PoleAt("Gamma has a pole at a nonpositive integer")
    res = np.exp(_log_gamma_anywhere(arr)).reshape(arr.shape)
    return _out(res, scalar)


def rgamma(z):
    """1/Gamma(z), entire, exactly zero at the nonpositive integers."""
    arr, scalar = _prep(z)
    flat = np.atleast_1d(arr).ravel()
    res = np.zeros_like(flat)
    ok = ~_is_nonpos_int(flat)
    if np.any(ok):
        res[ok] = np.exp(-_log_gamma_anywhere(flat[ok]))
    return _out(res.reshape(arr.shape), scalar)


def digamma(z):
    """psi(z) = Gamma'(z)/Gamma(z)."""
    arr, scalar = _prep(z)
    if np.any(_is_nonpos_int(arr)):
        raise PoleAt("digamma has a pole at a nonpositive integer")
    n = _shift_counts(arr)
    acc = np.zeros_like(arr)
    for k in range(int(n.max(initial=0))):
        acc = acc + np.where(k < n, 1.0 / (arr + k), 0.0)
    zs = arr + n
    inv2 = 1.0 / (zs * zs)
    asym = np.log(zs) - 0.5 / zs - inv2 * _horner(_PSI_COEF, inv2)
    return _out(asym - acc, scalar)


def _log_barnes_g_raw(z):
    # Theta(z) = Theta(z+n) - sum_{k<n} Pi(z+k)
    #          = logG1(z+n) - (n+1) Pi(z+n) + sum_{j<n} (j+1) log(z+j)
    n = _shift_counts(z)
    acc = np.zeros_like(z)
    for j in range(int(n.max(initial=0))):
        acc = acc + np.where(j < n, (j + 1) * np.log(z + j), 0.0)
    zs = z + n
    return _log_g1(zs) - (n + 1) * _stirling(zs) + acc


def log_barnes_g(z):
    """Analytic log G on C \\ (-inf, 0], real on the positive axis."""
    arr, scalar = _prep(z)
    _check_cut(arr)
    return _out(_log_barnes_g_raw(arr), scalar)


@lru_cache(maxsize=None)
def _hurwitz_tail_coef(a: int, mmax: int) -> np.ndarray:
    """sum_{k >= a} k^{-s} for s = 2..mmax via Euler-Maclaurin (a large)."""
    out = np.zeros(mmax + 1)
    for s in range(2, mmax + 1):
        total = a ** (1 - s) / (s - 1) + 0.5 * a ** (-s)
        rising = float(s)
        for j in range(1, 8):
            total += float(bernoulli(2 * j)) / math.factorial(2 * j) * rising * a ** (-s - 2 * j + 1)
            rising *= (s + 2 * j - 1) * (s + 2 * j)
        out[s] = total
    return out


_PRODUCT_K = 64
_PRODUCT_M = 30


def _barnes_g_product(z):
    """G(z) from the Weierstrass product for G(x+1), x = z-1, with a tail sum."""
    x = z - 1.0
    k = np.arange(1, _PRODUCT_K + 1, dtype=float)
    xs = x[..., None]
    fac = (1.0 + xs / k) ** k.astype(int) * np.exp(xs * xs / (2 * k) - xs)
    prod = np.prod(fac, axis=-1)
    # tail: log prod_{k>K} = sum_{m>=3} (-1)^{m+1} x^m/m * zeta_H(m-1, K+1)
    zt = _hurwitz_tail_coef(_PRODUCT_K + 1, _PRODUCT_M)
    tail = np.zeros_like(x)
    xm = x * x
    for m in range(3, _PRODUCT_M + 1):
        xm = xm * x
        tail = tail + (-1) ** (m + 1) * xm / m * zt[m - 1]
    pre = np.exp(0.5 * x * LOG_2PI - 0.5 * (x + x * x * (1.0 + EULER_GAMMA)))
    return pre * prod * np.exp(tail)


def barnes_g(z):
    """Barnes G(z); entire, zeros exactly at the nonpositive integers."""
    arr, scalar = _prep(z)
    flat = np.atleast_1d(arr).ravel().copy()
    res = np.zeros_like(flat)
    zero = _is_nonpos_int(flat)
    small = (~zero) & (np.abs(flat) <= 6.0)
    if np.any(small):
        res[small] = _barnes_g_product(flat[small])
    big_off = (~zero) & (~small) & (~_on_cut(flat))
    if np.any(big_off):
        res[big_off] = np.exp(_log_barnes_g_raw(flat[big_off]))
    big_cut = (~zero) & (~small) & _on_cut(flat)
    if np.any(big_cut):
        # G(z) = G(z+n) / prod_{k<n} Gamma(z+k), landing inside |z| <= 6
        zc = flat[big_cut]
        n = np.ceil(-zc.real - 5.0).astype(int)
        val = _barnes_g_product(zc + n)
        for k in range(int(n.max(initial=0))):
            sel = k < n
            val[sel] = val[sel] * rgamma(zc[sel] + k)
        res[big_cut] = val
    return _out(res.reshape(arr.shape), scalar)


# ---------------------------------------------------------------------------
# Gauss hypergeometric function

_EPS = np.finfo(float).eps


def _series_2f1(a, b, c, z, tol, max_terms):
    """Direct Gauss series on 1-d arrays; returns (values, error estimates).

    Each element stops once a geometric bound on its tail (from the next
    term ratios and |z|) drops below tol relative to the partial sum.
    """
    term = np.ones_like(z)
    total = np.ones_like(z)
    biggest = np.ones(z.shape)
    err = np.full(z.shape, math.inf)
    active = np.ones(z.shape, dtype=bool)
    thresh = 2 * (np.abs(a) + np.abs(b) + np.abs(c)) + 4
    for n in range(max_terms):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        A, B, C, Z = a[idx], b[idx], c[idx], z[idx]
        t = term[idx] * ((A + n) * (B + n) / ((C + n) * (n + 1)) * Z)
        term[idx] = t
        tot = total[idx] + t
        total[idx] = tot
        at = np.abs(t)
        big = np.maximum(biggest[idx], at)
        biggest[idx] = big
        finished = at == 0.0
        err[idx[finished]] = _EPS * big[finished] * 4
        # next few ratios and the limiting ratio bound the geometric tail
        chk = (~finished) & (n + 1 > thresh[idx])
        if np.any(chk):
            r = np.maximum.reduce([
                np.abs((A + n + 1) * (B + n + 1) / ((C + n + 1) * (n + 2)) * Z),
                np.abs((A + n + 2) * (B + n + 2) / ((C + n + 2) * (n + 3)) * Z),
                np.abs(Z)])
            with np.errstate(divide="ignore", invalid="ignore"):
                tail = at * r / (1.0 - r)
            ok = chk & (r < 1.0) & (tail <= tol * np.abs(tot))
            err[idx[ok]] = tail[ok] + _EPS * big[ok] * 4
            finished = finished | ok
        active[idx[finished]] = False
    return total, err


def _int_like(x):
    return (np.abs(x.imag) < 1e-12) & (np.abs(x.real - np.round(x.real)) < 1e-12)


def _nonpos_int_like(x):
    return _int_like(x) & (np.round(x.real) <= 0)


def _log_gamma_or_pole(x):
    """(log Gamma(x), pole mask) with a harmless placeholder at the poles."""
    pole = _is_nonpos_int(x)
    safe = np.where(pole, 1.0, x)
    return _log_gamma_anywhere(safe), pole


def _hyp2f1_array(a, b, c, z, tol, max_terms):
    if np.any(np.abs(z) >= 1.0):
        raise DomainRadius(f"|z| = {np.max(np.abs(z))} >= 1")
    if np.any(_nonpos_int_like(c)):
        raise PoleAt("c is a nonpositive integer")
    out = np.ones_like(z)
    trivial = (a == 0) | (b == 0) | (z == 0)
    val, err = _series_2f1(a, b, c, z, tol, max_terms)
    best_rel = np.where(trivial, 0.0, err / np.maximum(np.abs(val), 1e-300))
    best = np.where(trivial, out, val)
    todo = best_rel > tol
    if not np.any(todo):
        return best
    i = np.nonzero(todo)[0]
    a, b, c, z = a[i], b[i], c[i], z[i]
    cand_rel = [best_rel[i]]
    cand_val = [best[i]]
    # Pfaff: (1-z)^{-a} F(a, c-b; c; z/(z-1))
    zp = z / (z - 1.0)
    okp = np.abs(zp) < 1.0
    v, e = _series_2f1(a, c - b, c, np.where(okp, zp, 0.0), tol, max_terms)
    pre = np.exp(-a * np.log(1.0 - z))
    cand_rel.append(np.where(okp, e / np.maximum(np.abs(v), 1e-300), math.inf))
    cand_val.append(pre * v)
    # connection to 1-z; both pieces are entire in their gamma prefactors
    s = c - a - b
    zz = 1.0 - z
    okc = (np.abs(zz) < 1.0) & ~_int_like(s)
    tot = np.zeros_like(z)
    rel = np.zeros(z.shape)
    lc, _ = _log_gamma_or_pole(c)
    for num, den1, den2, aa, bb, cc, power in (
        (s, c - a, c - b, a, b, 1.0 - s, None),
        (-s, a, b, c - a, c - b, 1.0 + s, s),
    ):
        bad_cc = _nonpos_int_like(cc)
        okc = okc & ~bad_cc
        ln, pn = _log_gamma_or_pole(np.where(okc, num, 0.5))
        l1, p1 = _log_gamma_or_pole(den1)
        l2, p2 = _log_gamma_or_pole(den2)
        coef = np.where(p1 | p2, 0.0, np.exp(lc + ln - l1 - l2))
        v, e = _series_2f1(aa, bb, np.where(okc, cc, 0.5), np.where(okc, zz, 0.0), tol, max_terms)
        scale = coef if power is None else coef * np.exp(power * np.log(np.where(okc, zz, 1.0)))
        tot = tot + scale * v
        rel = rel + np.abs(scale) * (e + 8 * _EPS * np.abs(v))
    cand_rel.append(np.where(okc, rel / np.maximum(np.abs(tot), 1e-300), math.inf))
    cand_val.append(tot)
    rels = np.array(cand_rel)
    pick = np.argmin(rels, axis=0)
    best[i] = np.array(cand_val)[pick, np.arange(i.size)]
    return best


def hyp2f1(a, b, c, z, tol: float = 1e-15, max_terms: int = 5000):
    """Gauss 2F1(a, b; c; z) for |z| < 1 (arrays broadcast elementwise)."""
    arrs = np.broadcast_arrays(*(np.asarray(x, dtype=complex) for x in (a, b, c, z)))
    shape = arrs[0].shape
    flat = [np.ascontiguousarray(x).ravel() for x in arrs]
    res = _hyp2f1_array(*flat, tol, max_terms).reshape(shape)
    return complex(res) if shape == () else res


# ---------------------------------------------------------------------------
# extended precision (mpmath numbers, current mpmath.mp precision)

def log_gamma_mp(z):
    """Analytic log Gamma at the working mpmath precision.

    Same recurrence-plus-Stirling scheme as ``log_gamma`` with the shift
    point and the number of Bernoulli terms scaled to the precision.
    """
    z = mpmath.mpc(z)
    if z.imag == 0 and z.real <= 0:
        raise DomainCut(f"argument {z} lies on the cut (-inf, 0]")
    dps = mpmath.mp.dps
    big = (dps + 5) * math.log(10) / (2 * math.pi) + 2
    n = max(0, int(math.ceil(big - float(z.real))))
    acc = mpmath.mpc(0)
    prod = mpmath.mpc(1)
    for k in range(n):
        # multiply in chunks so the logarithm sum keeps the principal branch
        # of each factor; arguments are accumulated as logs of partial products
        prod *= z + k
        if (k + 1) % 8 == 0 or k == n - 1:
            acc += mpmath.log(prod)
            prod = mpmath.mpc(1)
    zs = z + n
    val = (zs - mpmath.mpf(0.5)) * mpmath.log(zs) - zs + mpmath.log(2 * mpmath.pi) / 2
    inv = 1 / zs
    inv2 = inv * inv
    power = inv
    eps = mpmath.mpf(10) ** (-dps - 3)
    for k in range(1, 4 * int(big) + 20):
        b = bernoulli(2 * k)
        t = mpmath.mpf(b.numerator) / b.denominator / (2 * k * (2 * k - 1)) * power
        val += t
        if abs(t) < eps * abs(val):
            break
        power *= inv2
    res = val - acc
    # restore the analytic branch: match the imaginary part of the double value
    ref = complex(_log_gamma_raw(np.asarray(complex(z))))
    twopi = 2 * mpmath.pi
    shift = round((float(res.imag) - ref.imag) / float(twopi))
    return res - 1j * twopi * shift
