"""Scalar/vector numerics: composite Gauss-Legendre quadrature and
central-difference derivatives.

All quantities are 64-bit floats; 3-vectors are numpy arrays of shape (3,).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import EvaluationError

__all__ = [
    "QuadratureRule",
    "gauss_legendre",
    "default_rule",
    "panel_nodes",
    "integrate_interval",
    "integrate_rect",
    "central_gradient",
    "unitize",
]


@dataclass(frozen=True)
class QuadratureRule:
    """Composite Gauss-Legendre rule.

    nodes/weights live on the reference interval [-1, 1]; `panels` equal
    subintervals are used when integrating.
    """

    nodes: np.ndarray
    weights: np.ndarray
    panels: int = 1

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if not np.all(np.diff(nodes) > 0):
            raise ValueError("nodes must be strictly increasing")
        if nodes[0] <= -1.0 or nodes[-1] >= 1.0:
            raise ValueError("nodes must lie strictly inside [-1, 1]")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        if abs(weights.sum() - 2.0) > 1e-12:
            raise ValueError("weights must sum to 2")
        if self.panels < 1:
            raise ValueError("panels must be a positive integer")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return len(self.nodes)


def _legendre(n: int, x: float) -> tuple[float, float]:
    # P_n(x) and P_n'(x) by the three-term recurrence; |x| < 1 required
    p_prev, p = 1.0, x
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


@lru_cache(maxsize=None)
def gauss_legendre(n: int, panels: int = 1) -> QuadratureRule:
    """Build an n-point Gauss-Legendre rule by Newton iteration on the
    Legendre recurrence (no stored tables).

    Roots are polished to a 1e-15 update tolerance and mirrored so the
    rule is exactly symmetric.
    """
    if n < 1:
        raise ValueError("need at least one node")
    nodes = np.empty(n)
    weights = np.empty(n)
    for i in range((n + 1) // 2):
        x = math.cos(math.pi * (i + 0.75) / (n + 0.5))
        for _ in range(100):
            p, dp = _legendre(n, x)
            dx = p / dp
            x -= dx
            if abs(dx) <= 1e-15:
                break
        p, dp = _legendre(n, x)
        w = 2.0 / ((1.0 - x * x) * dp * dp)
        nodes[i], weights[i] = -abs(x), w
        nodes[n - 1 - i], weights[n - 1 - i] = abs(x), w
    if n % 2 == 1:
        nodes[n // 2] = 0.0
    return QuadratureRule(nodes, weights, panels)


def default_rule() -> QuadratureRule:
    """Rule used when none is given: 16 nodes, 8 panels."""
    return gauss_legendre(16, panels=8)


def panel_nodes(a: float, b: float, rule: QuadratureRule) -> tuple[np.ndarray, np.ndarray]:
    """Abscissas and weights of `rule` mapped onto [a, b], all panels
    concatenated. Weights sum to b - a."""
    edges = np.linspace(a, b, rule.panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * rule.nodes[None, :]).ravel()
    w = (half[:, None] * rule.weights[None, :]).ravel()
    return x, w


def integrate_interval(f: Callable[[float], float], a: float, b: float,
                       rule: QuadratureRule) -> float:
    """Composite Gauss-Legendre estimate of the integral of f over [a, b].

    Exact for polynomials of degree <= 2n - 1 on each panel. Raises
    EvaluationError if f returns a non-finite value.
    """
    if not a < b:
        raise ValueError("require a < b")
    x, w = panel_nodes(a, b, rule)
    total = 0.0
    for xi, wi in zip(x, w):
        fx = f(xi)
        if not math.isfinite(fx):
            raise EvaluationError("integrand is not finite", where=xi)
        total += wi * fx
    return total


def integrate_rect(f: Callable[[float, float], float],
                   u_span: tuple[float, float], v_span: tuple[float, float],
                   rule: QuadratureRule) -> float:
    """Tensor-product composite estimate of the integral of f(u, v) over
    a rectangle given as two (lo, hi) spans."""
    u0, u1 = u_span
    v0, v1 = v_span
    if not (u0 < u1 and v0 < v1):
        raise ValueError("rectangle spans must be nonempty")
    xu, wu = panel_nodes(u0, u1, rule)
    xv, wv = panel_nodes(v0, v1, rule)
    total = 0.0
    for ui, wui in zip(xu, wu):
        for vj, wvj in zip(xv, wv):
            fx = f(ui, vj)
            if not math.isfinite(fx):
                raise EvaluationError("integrand is not finite", where=(ui, vj))
            total += wui * wvj * fx
    return total


def central_gradient(f: Callable[[np.ndarray], float], x, h: float) -> np.ndarray:
    """Component-wise central difference (f(x + h e) - f(x - h e)) / 2h
    of a scalar function of a 3-vector."""
    if h <= 0:
        raise ValueError("step h must be positive")
    x = np.asarray(x, dtype=float)
    out = np.empty(3)
    for k in range(3):
        step = np.zeros(3)
        step[k] = h
        fp = f(x + step)
        fm = f(x - step)
        if not (math.isfinite(fp) and math.isfinite(fm)):
            raise EvaluationError("function is not finite near", where=tuple(x))
        out[k] = (fp - fm) / (2.0 * h)
    return out


def unitize(v: np.ndarray, eps: float = 1e-300) -> np.ndarray:
    """v / |v|; raises ValueError on (numerically) zero input."""
    n = float(np.linalg.norm(v))
    if n < eps:
        raise ValueError("cannot normalize a zero vector")
    return v / n
