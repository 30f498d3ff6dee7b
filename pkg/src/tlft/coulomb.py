"""Coulomb-gas coefficients a_n at b = 1/sqrt(2) and brute-force oracles.

The coefficient a_n is the n-fold sphere integral

    a_n = int exp(-4b sum_j sum_l alpha_j G(x_j, y_l) - 4b^2 sum_{l<l'} G(y_l, y_l')) da^n

with G the sphere Green's function.  At b^2 = 1/2 the pair interaction is
|z_i - z_j|^2 in stereographic coordinates, so the integral collapses to
products of radial moments (``disk_moment``).  ``coeff`` evaluates those
products exactly (in extended precision); ``oracle_coeff`` integrates the
definition directly.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from . import specfun
from .errors import (BudgetExceeded, CoincidentPoints, DivergentIntegral, DomainError,
                     PoleAt)

SQRT2 = math.sqrt(2.0)
B_SOLVABLE = 1.0 / SQRT2

E1 = np.array([1.0, 0.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class CorrelatorCase:
    """Insertion data for one of the four solvable configurations.

    ``kind`` is one of ``"zero"``, ``"one"``, ``"two"``, ``"three"``.  For
    ``"two"`` the charges sit at -e3 and e3; for ``"three"`` at -e3, e1, e3
    with the middle charge fixed to 1/sqrt(2).
    """

    kind: str
    alphas: tuple = ()

    def __post_init__(self):
        expected = {"zero": 0, "one": 1, "two": 2, "three": 2}
        if self.kind not in expected:
            raise DomainError(f"unknown case kind {self.kind!r}")
        if len(self.alphas) != expected[self.kind]:
            raise DomainError(f"{self.kind} case needs {expected[self.kind]} charges")
        alphas = tuple(complex(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        for a in alphas:
            if not a.real > -1.0 / SQRT2:
                raise DomainError(f"Re(alpha) = {a.real} must exceed -1/sqrt(2)")

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def one(cls, alpha):
        return cls("one", (alpha,))

    @classmethod
    def two(cls, alpha1, alpha2):
        return cls("two", (alpha1, alpha2))

    @classmethod
    def two_cft(cls, p1, p2):
        """Two-point case with alpha_j = -1/(2 sqrt 2) + i P_j."""
        return cls("two", (complex(-0.5 / SQRT2, p1), complex(-0.5 / SQRT2, p2)))

    @classmethod
    def three(cls, alpha1, alpha3):
        return cls("three", (alpha1, alpha3))

    @property
    def charges(self) -> tuple:
        """All insertion charges including the fixed resonant one."""
        if self.kind == "three":
            return (self.alphas[0], B_SOLVABLE, self.alphas[1])
        return self.alphas

    @property
    def points(self) -> tuple:
        return {
            "zero": (),
            "one": (E3,),
            "two": (-E3, E3),
            "three": (-E3, E1, E3),
        }[self.kind]

    @property
    def w(self) -> complex:
        return -1.0 - SQRT2 * sum(self.charges, 0j)

    @property
    def betas(self) -> tuple:
        return tuple(1.0 + SQRT2 * a for a in self.alphas)

    @property
    def prefactor(self) -> complex:
        """prod_{j<j'} exp(-4 alpha_j alpha_j' G(x_j, x_j'))."""
        if self.kind == "two":
            a1, a2 = self.alphas
            return complex(np.exp(2 * a1 * a2))
        if self.kind == "three":
            a1, a3 = self.alphas
            s = SQRT2 * (a1 + a3)
            return complex(np.exp(s + 2 * a1 * a3 - s * math.log(2.0)))
        return 1.0 + 0j

    def label(self) -> str:
        if not self.alphas:
            return self.kind
        return self.kind + "(" + ", ".join(f"{a.real:g}{a.imag:+g}i" for a in self.alphas) + ")"


def green_sphere(x, y):
    """Green's function of the unit sphere, -ln|x-y| - 1/2 + ln 2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    for v in (x, y):
        if np.any(np.abs(np.linalg.norm(v, axis=-1) - 1.0) > 1e-12):
            raise DomainError("points must lie on the unit sphere")
    d = np.linalg.norm(x - y, axis=-1)
    if np.any(d < 1e-10):
        raise CoincidentPoints("Green's function is singular on the diagonal")
    res = -np.log(d) - 0.5 + math.log(2.0)
    return float(res) if np.ndim(res) == 0 else res


def disk_moment(alpha, beta):
    """int_C |z|^alpha (1+|z|^2)^(-beta) d^2z."""
    alpha = complex(alpha)
    beta = complex(beta)
    if not (alpha.real > -2.0 and (2 * beta - alpha).real > 2.0):
        raise DivergentIntegral(f"moment diverges for alpha={alpha}, beta={beta}")
    g = specfun.gamma
    return math.pi * g(beta - alpha / 2 - 1) * g(alpha / 2 + 1) * specfun.rgamma(beta)


def gamma_sum_identity(n: int, a, b):
    """Direct sum of 1/(Gamma(j+a) Gamma(n-j+b)) and its 2F1 closed form."""
    a = complex(a)
    b = complex(b)
    for v in (a, b):
        if abs(v.imag) < 1e-12 and v.real <= 0 and abs(v.real - round(v.real)) < 1e-12:
            raise PoleAt("a and b must avoid the nonpositive integers")
    rg = specfun.rgamma
    lhs = sum(rg(j + a) * rg(n - j + b) for j in range(n + 1))
    s = n + a + b - 1
    rhs = (specfun.hyp2f1(1, s, a, 0.5) * 0.5 * rg(a) * rg(n + b)
           - (b - 1) * specfun.hyp2f1(1, s, n + a + 1, 0.5) * 0.5 * rg(n + a + 1) * rg(b))
    return complex(lhs), complex(rhs)


# ---------------------------------------------------------------------------
# exact coefficients

def _check_poles(args):
    for x in args:
        x = complex(x)
        r = round(x.real)
        if r <= 0 and abs(x.real - r) < 1e-8 and abs(x.imag) < 1e-8:
            raise PoleAt(f"Gamma argument {x} is a nonpositive integer")


class _LogGammaLadder:
    """log Gamma(x + k) for k = 0, 1, 2, ... by upward recurrence."""

    def __init__(self, x):
        self.x = mpmath.mpc(x)
        self.vals = [specfun.log_gamma_mp(self.x)]

    def __getitem__(self, k):
        while len(self.vals) <= k:
            j = len(self.vals) - 1
            self.vals.append(self.vals[j] + mpmath.log(self.x + j))
        return self.vals[k]


def iter_log_coefficients(case: CorrelatorCase):
    """Yield log a_n for n = 0, 1, 2, ... as mpmath numbers.

    Values use the working mpmath precision at the time each one is
    produced.  Only exp of these values is meaningful (the branch of the
    logarithm is not tracked).
    """
    mp = mpmath
    w = mp.mpc(case.w)
    log4pi = mp.log(4 * mp.pi)
    logpi = mp.log(mp.pi)
    fact = _LogGammaLadder(1)  # fact[k] = log k!
    yield mp.mpc(0)
    kind = case.kind
    n = 0
    if kind in ("zero", "one"):
        lg_w = _LogGammaLadder(-w) if kind == "one" else None
        sum_fact = mp.mpc(0)   # sum_{j<n} log j!
        sum_gw = mp.mpc(0)     # sum_{k<n} log Gamma(k - w)
        while True:
            n += 1
            sum_fact += fact[n - 1]
            if kind == "zero":
                # disk moments pi j! (n-1-j)! / n!
                lgn = fact[n]
                sum_gw += fact[n - 1]
            else:
                lgn = lg_w[n]
                sum_gw += lg_w[n - 1]
            yield (n * log4pi + n * (n - 3 - 2 * w) / 2 + fact[n]
                   + sum_fact + sum_gw - n * lgn)
    s1 = mp.mpc(SQRT2 * case.alphas[0])
    s2 = mp.mpc(SQRT2 * case.alphas[1])
    _check_poles([1 + s1, 1 + s2])
    l1 = _LogGammaLadder(1 + s1)  # l1[k] = log Gamma(k + 1 + s1)
    l2 = _LogGammaLadder(1 + s2)
    # only Gamma(n - w) with n >= 1 appears; w = 0 is allowed here
    lw = _LogGammaLadder(1 - w)   # lw[k] = log Gamma(k + 1 - w)
    if kind == "two":
        acc = mp.mpc(0)
        while True:
            n += 1
            acc += l1[n - 1] + l2[n - 1]
            yield n * log4pi + n * (n - 3 - 2 * w) / 2 + fact[n] + acc - n * lw[n - 1]
    # three-point: a_n = 2^n e^{...} n! prod_i m_i sum_j 1/m_j with
    # m_i = pi Gamma(n-i+2+s3) Gamma(i+s1) / Gamma(n-w), i = 1..n+1.
    # sum_j 1/m_j = Gamma(n-w)/pi * sum_k u_k v_{n-k}, u_k = 1/Gamma(k+1+s1),
    # v_k = 1/Gamma(k+1+s3): a convolution of two reciprocal-Gamma ladders.
    log2 = mp.log(2)
    u = [mp.exp(-l1[0])]
    v = [mp.exp(-l2[0])]
    acc = l1[0] + l2[0]
    while True:
        n += 1
        acc += l1[n] + l2[n]
        u.append(u[-1] / (n + s1))
        v.append(v[-1] / (n + s2))
        log_prod = (n + 1) * (logpi - lw[n - 1]) + acc
        conv = mp.fdot(u, reversed(v))
        yield (n * log2 + n * (n - 3 - 2 * w) / 2 + fact[n] + log_prod
               + lw[n - 1] - logpi + mp.log(conv))


def log_coefficients(case: CorrelatorCase, nmax: int) -> list:
    """log a_n for n = 0..nmax at the working mpmath precision."""
    it = iter_log_coefficients(case)
    return [next(it) for _ in range(nmax + 1)]


def coeff(case: CorrelatorCase, n: int) -> complex:
    """Exact a_n from the determinantal reduction (a_0 = 1)."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n == 0:
        return 1.0 + 0j
    with mpmath.workdps(30):
        logs = log_coefficients(case, n)
        return complex(mpmath.exp(logs[n]))


# ---------------------------------------------------------------------------
# brute-force oracles

@dataclass(frozen=True)
class SphereOracleSpec:
    """Settings for ``oracle_coeff``.

    ``method`` is ``"mc"`` (uniform Monte Carlo on the sphere) or ``"grid"``
    (tensor grid in stereographic polar coordinates).
    """

    method: str = "mc"
    samples: int = 200_000
    seed: int = 20240611
    grid: tuple = (64, 64)
    batch: int = 50_000
    b: float = B_SOLVABLE
    target_stderr: float | None = None
    max_samples: int = 20_000_000

    def __post_init__(self):
        if self.method not in ("mc", "grid"):
            raise DomainError("method must be 'mc' or 'grid'")
        if self.method == "mc" and self.samples < 1000:
            raise DomainError("Monte Carlo needs at least 10^3 samples")
        if self.method == "grid" and min(self.grid) < 64:
            raise DomainError("grid needs at least 64x64 nodes")


def _log_weight(case: CorrelatorCase, ys: np.ndarray, b: float) -> np.ndarray:
    """Log of the integrand of a_n; ys has shape (..., n, 3)."""
    total = np.zeros(ys.shape[:-2], dtype=complex)
    for alpha, x in zip(case.charges, case.points):
        d = np.linalg.norm(ys - x, axis=-1)
        g = -np.log(d) - 0.5 + math.log(2.0)
        total = total - 4 * b * alpha * g.sum(axis=-1)
    n = ys.shape[-2]
    for i in range(n):
        for j in range(i + 1, n):
            d = np.linalg.norm(ys[..., i, :] - ys[..., j, :], axis=-1)
            total = total - 4 * b * b * (-np.log(d) - 0.5 + math.log(2.0))
    return total


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TLFT_THREADS", "1")))
    except ValueError:
        return 1


def _mc_batch(case, n, spec, index, size):
    rng = np.random.default_rng(np.random.SeedSequence([spec.seed, index]))
    g = rng.standard_normal((size, n, 3))
    ys = g / np.linalg.norm(g, axis=-1, keepdims=True)
    vals = np.exp(_log_weight(case, ys, spec.b))
    return vals.sum(), (vals.real ** 2).sum(), (vals.imag ** 2).sum(), size


def _mc(case, n, spec):
    total = 0j
    sq_re = sq_im = 0.0
    count = 0
    batch_index = 0
    goal = spec.samples
    scale = (4 * math.pi) ** n
    while True:
        sizes = []
        remaining = goal - count
        while remaining > 0:
            sizes.append(min(spec.batch, remaining))
            remaining -= sizes[-1]
        jobs = [(batch_index + k, s) for k, s in enumerate(sizes)]
        batch_index += len(jobs)
        with ThreadPoolExecutor(max_workers=_threads()) as pool:
            results = list(pool.map(lambda js: _mc_batch(case, n, spec, *js), jobs))
        for s, qr, qi, m in results:  # fixed order keeps the sum reproducible
            total += s
            sq_re += qr
            sq_im += qi
            count += m
        mean = total / count
        var = (sq_re / count - mean.real ** 2) + (sq_im / count - mean.imag ** 2)
        stderr = math.sqrt(max(var, 0.0) / count) * scale
        if spec.target_stderr is None or stderr <= spec.target_stderr:
            return complex(mean * scale), stderr
        if count >= spec.max_samples:
            raise BudgetExceeded(f"stderr {stderr:.3g} above target after {count} samples")
        goal = min(spec.max_samples, 4 * count)


@lru_cache(maxsize=16)
def _radial_rule(m: int):
    """Nodes/weights on (0, inf) from a tanh-sinh map of t in (0,1), r = t/(1-t)."""
    smax = 3.2
    h = 2 * smax / m
    s = -smax + h * (np.arange(m) + 0.5)
    u = 0.5 * math.pi * np.sinh(s)
    t = 0.5 * (1 + np.tanh(u))
    dt = 0.25 * math.pi * np.cosh(s) / np.cosh(u) ** 2 * h
    # 1 - t computed without cancellation
    one_minus_t = np.exp(-u) / (2 * np.cosh(u))
    r = t / one_minus_t
    dr = dt / one_minus_t ** 2
    return r, dr


def _plane_rule(nr: int, nt: int):
    r, dr = _radial_rule(nr)
    th = 2 * math.pi * np.arange(nt) / nt
    rr, tt = np.meshgrid(r, th, indexing="ij")
    z = (rr * np.exp(1j * tt)).ravel()
    # area element 4/(1+|z|^2)^2 times r dr dtheta
    wts = (np.outer(dr * r * 4 / (1 + r * r) ** 2, np.full(nt, 2 * math.pi / nt))).ravel()
    return z, wts


def inverse_stereographic(z):
    z = np.asarray(z, dtype=complex)
    m = np.abs(z) ** 2
    return np.stack([2 * z.real, 2 * z.imag, m - 1], axis=-1) / (1 + m)[..., None]


def _grid(case, n, spec, nr, nt):
    z, wts = _plane_rule(nr, nt)
    ys = inverse_stereographic(z)
    if n == 1:
        vals = np.exp(_log_weight(case, ys[:, None, :], spec.b))
        return complex(np.sum(vals * wts))
    if n == 2:
        total = 0j
        for i in range(len(z)):
            pair = np.empty((len(z), 2, 3))
            pair[:, 0, :] = ys[i]
            pair[:, 1, :] = ys
            with np.errstate(divide="ignore", invalid="ignore"):
                vals = np.exp(_log_weight(case, pair, spec.b))
            vals = np.where(np.isfinite(vals), vals, 0.0)
            total += wts[i] * np.sum(vals * wts)
        return complex(total)
    raise DomainError("grid oracle supports n <= 2")


def oracle_coeff(case: CorrelatorCase, n: int, spec: SphereOracleSpec = SphereOracleSpec()):
    """Brute-force estimate of a_n from its defining sphere integral.

    Returns (estimate, error).  For Monte Carlo the error is the standard
    error; for the grid it is the change under halving the node counts.
    """
    if n < 0 or n > 4:
        raise DomainError("oracle supports 0 <= n <= 4")
    if n == 0:
        return 1.0 + 0j, 0.0
    if spec.method == "mc":
        return _mc(case, n, spec)
    nr, nt = spec.grid
    fine = _grid(case, n, spec, nr, nt)
    coarse = _grid(case, n, spec, nr // 2, nt // 2)
    return fine, abs(fine - coarse)
