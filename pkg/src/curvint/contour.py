"""Patch/contour integrals on analytic surfaces.

For a patch P of a surface with boundary contour G traversed
counterclockwise in parameter space, this module evaluates both sides of

    integral_P  N * H dS   =   integral_G  n dG

(N unit surface normal, H mean curvature, n exterior in-surface normal of
the contour) and the shrinking-patch limit of the right-hand side divided
by patch area, which recovers N * H pointwise.

The exterior normal is computed as t x N from the curve tangent t; with
counterclockwise parameter traversal this always points out of the patch
(asserted by the test suite, not assumed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContourError, DomainError
from .numerics import QuadratureRule, default_rule, panel_nodes
from .surfaces import ParametricSurface

__all__ = [
    "RectRegion",
    "DiskRegion",
    "BoundaryPoint",
    "IdentityReport",
    "LimitEstimate",
    "boundary_point",
    "lhs_integral",
    "rhs_integral",
    "region_area",
    "contour_length",
    "verify_identity",
    "shrinking_limit",
]

_PERIOD = 2.0 * math.pi  # all periodic coordinates in this package
_TANGENT_TOL = 1e-12


@dataclass(frozen=True)
class RectRegion:
    """Axis-aligned rectangle [u0, u1] x [v0, v1] in parameter space,
    boundary traversed counterclockwise."""

    u0: float
    u1: float
    v0: float
    v1: float

    def __post_init__(self):
        if not (self.u1 > self.u0 and self.v1 > self.v0):
            raise ValueError("rectangle must have positive extent")

    @property
    def label(self) -> str:
        # comma-free so the label stays one CSV field
        return f"rect[{self.u0:g}:{self.u1:g}]x[{self.v0:g}:{self.v1:g}]"

    def _edges(self):
        # counterclockwise: bottom, right, top, left
        c = [(self.u0, self.v0), (self.u1, self.v0), (self.u1, self.v1), (self.u0, self.v1)]
        out = [(0.0, -1.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.0)]
        for k in range(4):
            a, b = c[k], c[(k + 1) % 4]
            yield a, (b[0] - a[0], b[1] - a[1]), out[k]

    def segments(self):
        for start, delta, _ in self._edges():
            yield _Line(start, delta)

    def boundary_param(self, s: float):
        s = float(s) % 1.0
        k = min(int(s * 4.0), 3)
        tau = s * 4.0 - k
        edges = list(self._edges())
        start, delta, outward = edges[k]
        point = (start[0] + tau * delta[0], start[1] + tau * delta[1])
        velocity = (4.0 * delta[0], 4.0 * delta[1])  # d(u,v)/ds
        return point, velocity, outward

    def validate_on(self, surface: ParametricSurface):
        for span, periodic, rng in (
            ((self.u0, self.u1), surface.u_periodic, surface.u_range),
            ((self.v0, self.v1), surface.v_periodic, surface.v_range),
        ):
            if periodic:
                if span[1] - span[0] > _PERIOD + 1e-12:
                    raise DomainError("region spans more than one period")
        if not (surface.contains(self.u0, self.v0) and surface.contains(self.u1, self.v1)):
            raise DomainError(f"region not inside the domain of {surface.name}")


@dataclass(frozen=True)
class DiskRegion:
    """Disk of radius rho around (uc, vc) in parameter space, boundary
    traversed counterclockwise."""

    uc: float
    vc: float
    rho: float

    def __post_init__(self):
        if self.rho <= 0:
            raise ValueError("disk radius must be positive")

    @property
    def label(self) -> str:
        return f"disk({self.uc:g}:{self.vc:g};{self.rho:g})"

    def segments(self):
        yield _Circle(self.uc, self.vc, self.rho)

    def boundary_param(self, s: float):
        s = float(s) % 1.0
        a = 2.0 * math.pi * s
        point = (self.uc + self.rho * math.cos(a), self.vc + self.rho * math.sin(a))
        velocity = (-2.0 * math.pi * self.rho * math.sin(a),
                    2.0 * math.pi * self.rho * math.cos(a))
        outward = (math.cos(a), math.sin(a))
        return point, velocity, outward

    def validate_on(self, surface: ParametricSurface):
        if (surface.u_periodic or surface.v_periodic) and self.rho > _PERIOD / 2:
            raise DomainError("disk wider than one period")
        corners = [(self.uc - self.rho, self.vc - self.rho),
                   (self.uc + self.rho, self.vc + self.rho)]
        for u, v in corners:
            if not surface.contains(u, v):
                raise DomainError(f"region not inside the domain of {surface.name}")


class _Line:
    def __init__(self, start, delta):
        self.start = start
        self.delta = delta

    def points(self, t):
        return self.start[0] + t * self.delta[0], self.start[1] + t * self.delta[1]

    def velocity(self, t):
        one = np.ones_like(t)
        return self.delta[0] * one, self.delta[1] * one


class _Circle:
    def __init__(self, uc, vc, rho):
        self.uc, self.vc, self.rho = uc, vc, rho

    def points(self, t):
        a = 2.0 * np.pi * t
        return self.uc + self.rho * np.cos(a), self.vc + self.rho * np.sin(a)

    def velocity(self, t):
        a = 2.0 * np.pi * t
        w = 2.0 * np.pi * self.rho
        return -w * np.sin(a), w * np.cos(a)


@dataclass(frozen=True)
class BoundaryPoint:
    """Contour sample: image position, unit curve tangent, unit exterior
    in-surface normal, and |d(image)/ds| for the s in [0, 1) boundary
    parameter."""

    position: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    speed: float


@dataclass(frozen=True)
class IdentityReport:
    """Both sides of the patch/contour identity plus error metrics and
    the patch area."""

    lhs: np.ndarray
    rhs: np.ndarray
    abs_err: float
    rel_err: float
    area: float


@dataclass(frozen=True)
class LimitEstimate:
    """Shrinking-disk study: per-radius contour averages against the
    pointwise target N * H at the disk center."""

    radii: np.ndarray
    estimates: np.ndarray  # shape (len(radii), 3)
    target: np.ndarray
    errors: np.ndarray
    observed_order: float


def boundary_point(surface: ParametricSurface, region, s: float) -> BoundaryPoint:
    """Evaluate the oriented boundary of `region` at parameter s in [0, 1)."""
    region.validate_on(surface)
    (u, v), (du, dv), _ = region.boundary_param(s)
    pos, s1, s2, normal, _, _ = surface.geometry(u, v)
    d = du * s1 + dv * s2
    speed = float(np.linalg.norm(d))
    if speed < _TANGENT_TOL:
        raise ContourError(f"degenerate contour tangent at s={s}")
    tangent = d / speed
    n = np.cross(tangent, normal)
    n /= np.linalg.norm(n)
    return BoundaryPoint(pos, tangent, n, speed)


def _boundary_quadrature(surface, region, rule, integrand):
    """Accumulate integrand(n_ext, speed, weights) over all boundary
    segments; integrand receives arrays and returns the weighted total."""
    region.validate_on(surface)
    total = None
    for seg in region.segments():
        t, w = panel_nodes(0.0, 1.0, rule)
        u, v = seg.points(t)
        du, dv = seg.velocity(t)
        _, s1, s2, normal, _, _ = surface.geometry(u, v)
        d = du[:, None] * s1 + dv[:, None] * s2
        speed = np.linalg.norm(d, axis=1)
        if np.any(speed < _TANGENT_TOL):
            raise ContourError("degenerate contour tangent")
        tangent = d / speed[:, None]
        n = np.cross(tangent, normal)
        n /= np.linalg.norm(n, axis=1, keepdims=True)
        part = integrand(n, speed, w)
        total = part if total is None else total + part
    return total


def rhs_integral(surface: ParametricSurface, region, rule: QuadratureRule | None = None) -> np.ndarray:
    """Contour integral of the exterior in-surface normal, one composite
    rule per edge (rectangles) or around the circle (disks)."""
    rule = rule or default_rule()
    return _boundary_quadrature(
        surface, region, rule,
        lambda n, speed, w: ((w * speed)[:, None] * n).sum(axis=0))


def contour_length(surface: ParametricSurface, region, rule: QuadratureRule | None = None) -> float:
    """Arc length of the region boundary."""
    rule = rule or default_rule()
    return float(_boundary_quadrature(
        surface, region, rule, lambda n, speed, w: float(w @ speed)))


def _interior_quadrature(surface, region, rule, values):
    """Tensor-product quadrature over the region of values(normal, H,
    sqrt_g) -> array; disks are mapped through polar coordinates with the
    analytic Jacobian."""
    region.validate_on(surface)
    if isinstance(region, RectRegion):
        xu, wu = panel_nodes(region.u0, region.u1, rule)
        xv, wv = panel_nodes(region.v0, region.v1, rule)
        U = np.broadcast_to(xu[:, None], (len(xu), len(xv)))
        V = np.broadcast_to(xv[None, :], (len(xu), len(xv)))
        _, _, _, normal, sqrt_g, mean = surface.geometry(U, V)
        field = values(normal, mean, sqrt_g)
        if field.ndim == 2:
            return float(np.einsum("i,j,ij->", wu, wv, field))
        return np.einsum("i,j,ijk->k", wu, wv, field)
    if isinstance(region, DiskRegion):
        xr, wr = panel_nodes(0.0, region.rho, rule)
        xt, wt = panel_nodes(0.0, 2.0 * math.pi, rule)
        U = region.uc + xr[:, None] * np.cos(xt)[None, :]
        V = region.vc + xr[:, None] * np.sin(xt)[None, :]
        _, _, _, normal, sqrt_g, mean = surface.geometry(U, V)
        field = values(normal, mean, sqrt_g)
        jac = xr[:, None]
        if field.ndim == 2:
            return float(np.einsum("i,j,ij->", wr, wt, field * jac))
        return np.einsum("i,j,ijk->k", wr, wt, field * jac[..., None])
    raise TypeError(f"unsupported region type {type(region).__name__}")


def lhs_integral(surface: ParametricSurface, region, rule: QuadratureRule | None = None) -> np.ndarray:
    """Patch integral of N * H over the region."""
    rule = rule or default_rule()
    return _interior_quadrature(
        surface, region, rule,
        lambda n, mean, sqrt_g: n * (mean * sqrt_g)[..., None])


def region_area(surface: ParametricSurface, region, rule: QuadratureRule | None = None) -> float:
    """Surface area of the region (quadrature of the area element)."""
    rule = rule or default_rule()
    return _interior_quadrature(
        surface, region, rule, lambda n, mean, sqrt_g: sqrt_g)


def verify_identity(surface: ParametricSurface, region,
                    rule: QuadratureRule | None = None) -> IdentityReport:
    """Evaluate both integrals independently and report their mismatch.

    rel_err is abs_err / max(|lhs|, |rhs|, 1e-30); it is only meaningful
    when the shared true value is away from zero (on minimal surfaces use
    the contour integral against the contour length instead).
    """
    rule = rule or default_rule()
    lhs = lhs_integral(surface, region, rule)
    rhs = rhs_integral(surface, region, rule)
    area = region_area(surface, region, rule)
    abs_err = float(np.linalg.norm(lhs - rhs))
    rel_err = abs_err / max(float(np.linalg.norm(lhs)), float(np.linalg.norm(rhs)), 1e-30)
    return IdentityReport(lhs, rhs, abs_err, rel_err, area)


def shrinking_limit(surface: ParametricSurface, center: tuple[float, float],
                    radii, rule: QuadratureRule | None = None) -> LimitEstimate:
    """Average the contour integral over parameter disks of decreasing
    radius and compare with N * H at the center.

    observed_order is the least-squares slope of log error against log
    radius (nan when an error underflows the meaningful range, e.g. on a
    plane where every estimate is exactly zero).
    """
    rule = rule or default_rule()
    radii = np.asarray(radii, dtype=float)
    if len(radii) < 2:
        raise ValueError("need at least two radii")
    if np.any(radii <= 0) or not np.all(np.diff(radii) < 0):
        raise ValueError("radii must be positive and strictly decreasing")
    uc, vc = float(center[0]), float(center[1])
    _, _, _, normal, _, mean = surface.geometry(uc, vc)
    target = normal * mean
    estimates = np.empty((len(radii), 3))
    for i, rho in enumerate(radii):
        disk = DiskRegion(uc, vc, float(rho))
        estimates[i] = rhs_integral(surface, disk, rule) / region_area(surface, disk, rule)
    errors = np.linalg.norm(estimates - target[None, :], axis=1)
    if np.all(errors > 1e-14):
        observed_order = float(np.polyfit(np.log(radii), np.log(errors), 1)[0])
    else:
        observed_order = float("nan")
    return LimitEstimate(radii, estimates, target, errors, observed_order)
