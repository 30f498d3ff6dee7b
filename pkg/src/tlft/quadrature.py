"""Small quadrature toolkit shared by the contour and zero-mode evaluators."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import QuadratureFailure


@lru_cache(maxsize=None)
def gauss_legendre(n: int):
    """Nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def panel_nodes(a: float, b: float, panels: int, order: int = 16):
    """Composite Gauss-Legendre nodes/weights on [a, b] with equal panels."""
    x, w = gauss_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def pairwise_sum(values):
    """Sum along the last axis in a fixed pairwise tree order."""
    v = np.asarray(values)
    while v.shape[-1] > 1:
        if v.shape[-1] % 2:
            v = np.concatenate([v, np.zeros(v.shape[:-1] + (1,), dtype=v.dtype)], axis=-1)
        v = v[..., 0::2] + v[..., 1::2]
    return v[..., 0]


def composite_gl(func, a: float, b: float, panels: int, rel_tol: float,
                 max_evals: int, order: int = 16, abs_floor: float = 0.0,
                 l1_scale: bool = False):
    """Integrate ``func`` (vectorized) over [a, b], doubling panels until two
    successive composite rules agree.  Returns (value, error estimate).

    With ``l1_scale`` the tolerance is relative to int |func| rather than
    to the value, for integrals that cancel to (near) zero.
    """
    nodes, weights = panel_nodes(a, b, panels, order)
    prev = pairwise_sum(func(nodes) * weights)
    evals = nodes.size
    while True:
        panels *= 2
        nodes, weights = panel_nodes(a, b, panels, order)
        evals += nodes.size
        vals = func(nodes) * weights
        cur = pairwise_sum(vals)
        err = np.max(np.abs(cur - prev))
        scale = np.max(np.sum(np.abs(vals), axis=-1)) if l1_scale else np.max(np.abs(cur))
        if err <= rel_tol * scale + abs_floor:
            return cur, err
        if evals > max_evals:
            raise QuadratureFailure(
                f"composite rule did not settle: error {err:.3e} vs value {scale:.3e} "
                f"after {evals} evaluations")
        prev = cur


@lru_cache(maxsize=None)
def exp_sinh_rule(h: float, t_min: float, t_max: float):
    """Exp-sinh nodes u = exp(pi/2 sinh t) on (0, inf) with trapezoid weights."""
    t = np.arange(math.ceil(t_min / h), math.floor(t_max / h) + 1) * h
    s = 0.5 * math.pi * np.sinh(t)
    u = np.exp(s)
    w = h * 0.5 * math.pi * np.cosh(t) * u
    u.setflags(write=False)
    w.setflags(write=False)
    return u, w
