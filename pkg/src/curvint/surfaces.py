"""Analytic parametric surfaces r(u, v) with closed-form tangent basis,
unit normal, area element and mean curvature.

Conventions, used consistently everywhere in this package:

* the unit normal is N = S1 x S2 / |S1 x S2| with S1 = dr/du, S2 = dr/dv;
* the second fundamental form is b_ab = (d^2 r / du^a du^b) . N;
* the mean curvature is the trace H = g^ab b_ab (sum of the principal
  curvatures, not their average).

Under this convention a sphere of radius R parameterized by colatitude and
longitude carries the outward normal and H = -2/R. The sign is pinned by
the contour identity in `curvint.contour` (exterior boundary normals make
both sides agree), not chosen by hand.

All evaluators accept scalars or broadcasting numpy arrays for (u, v).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError

__all__ = [
    "SurfaceFrame",
    "ParametricSurface",
    "Plane",
    "Sphere",
    "Cylinder",
    "Torus",
    "Catenoid",
    "Enneper",
    "MongeGraph",
    "saddle",
    "surface_from_name",
    "bundled_surfaces",
]

_DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class SurfaceFrame:
    """Pointwise surface data: position, coordinate tangents S1/S2, unit
    normal, area element |S1 x S2| and mean curvature."""

    position: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    normal: np.ndarray
    sqrt_g: float
    mean_curvature: float


def _dot(a, b):
    return np.einsum("...i,...i->...", a, b)


class ParametricSurface:
    """Base class. Subclasses supply position(), partials() and
    second_partials(); everything else is derived.

    u_range/v_range bound the admissible parameter domain; a periodic
    coordinate accepts any finite value. `margin` keeps evaluation away
    from parameterization degeneracies of bounded coordinates.
    """

    name = "surface"
    u_range: tuple[float, float] = (-math.inf, math.inf)
    v_range: tuple[float, float] = (-math.inf, math.inf)
    u_periodic = False
    v_periodic = False
    margin = 0.0

    # -- subclass surface definition -------------------------------------

    def position(self, u, v) -> np.ndarray:
        raise NotImplementedError

    def partials(self, u, v) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def second_partials(self, u, v) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        raise NotImplementedError

    # -- domain handling --------------------------------------------------

    def _inside_1d(self, x, rng, periodic, pad):
        if periodic:
            return np.isfinite(x)
        lo, hi = rng
        lo = lo + pad if math.isfinite(lo) else lo
        hi = hi - pad if math.isfinite(hi) else hi
        return np.isfinite(x) & (x >= lo) & (x <= hi)

    def contains(self, u, v, pad: float | None = None) -> bool:
        """Whether every (u, v) lies in the admissible domain, `pad`
        inside the bounded edges (defaults to the surface margin)."""
        pad = self.margin if pad is None else pad
        ok = self._inside_1d(np.asarray(u, float), self.u_range, self.u_periodic, pad)
        ok = ok & self._inside_1d(np.asarray(v, float), self.v_range, self.v_periodic, pad)
        return bool(np.all(ok))

    def require_inside(self, u, v, pad: float | None = None):
        if not self.contains(u, v, pad=pad):
            raise DomainError(
                f"parameter point outside the admissible domain of {self.name}"
            )

    # -- derived geometry ---------------------------------------------------

    def geometry(self, u, v):
        """Vectorized evaluation; returns (position, s1, s2, normal,
        sqrt_g, mean_curvature) with a trailing axis of 3 on the vectors."""
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        self.require_inside(u, v)
        s1, s2 = self.partials(u, v)
        cross = np.cross(s1, s2)
        sqrt_g = np.linalg.norm(cross, axis=-1)
        if np.any(sqrt_g < _DEGENERATE_TOL):
            raise DomainError(f"degenerate parameterization of {self.name}")
        normal = cross / sqrt_g[..., None]
        ruu, ruv, rvv = self.second_partials(u, v)
        g11 = _dot(s1, s1)
        g12 = _dot(s1, s2)
        g22 = _dot(s2, s2)
        b11 = _dot(ruu, normal)
        b12 = _dot(ruv, normal)
        b22 = _dot(rvv, normal)
        mean = (g22 * b11 - 2.0 * g12 * b12 + g11 * b22) / (g11 * g22 - g12 * g12)
        return self.position(u, v), s1, s2, normal, sqrt_g, mean

    def frame(self, u: float, v: float) -> SurfaceFrame:
        """Full first/second-order data at a single parameter point."""
        pos, s1, s2, normal, sqrt_g, mean = self.geometry(float(u), float(v))
        return SurfaceFrame(pos, s1, s2, normal, float(sqrt_g), float(mean))

    def numeric_mean_curvature(self, u: float, v: float, h: float = 1e-4) -> float:
        """Mean curvature recomputed from finite-difference fundamental
        forms; independent of partials()/second_partials(), same sign
        convention as frame()."""
        if h <= 0:
            raise ValueError("step h must be positive")
        self.require_inside(u, v, pad=max(self.margin, 0.0))
        for x, rng, periodic in ((u, self.u_range, self.u_periodic),
                                 (v, self.v_range, self.v_periodic)):
            if not periodic:
                lo, hi = rng
                if (math.isfinite(lo) and x - 2 * h < lo) or \
                   (math.isfinite(hi) and x + 2 * h > hi):
                    raise DomainError("point too close to the domain edge for the stencil")
        p = self.position
        s1 = (p(u + h, v) - p(u - h, v)) / (2 * h)
        s2 = (p(u, v + h) - p(u, v - h)) / (2 * h)
        pc = p(u, v)
        ruu = (p(u + h, v) - 2 * pc + p(u - h, v)) / (h * h)
        rvv = (p(u, v + h) - 2 * pc + p(u, v - h)) / (h * h)
        ruv = (p(u + h, v + h) - p(u + h, v - h)
               - p(u - h, v + h) + p(u - h, v - h)) / (4 * h * h)
        cross = np.cross(s1, s2)
        sqrt_g = float(np.linalg.norm(cross))
        if sqrt_g < _DEGENERATE_TOL:
            raise DomainError(f"degenerate parameterization of {self.name}")
        normal = cross / sqrt_g
        g11, g12, g22 = float(s1 @ s1), float(s1 @ s2), float(s2 @ s2)
        b11, b12, b22 = float(ruu @ normal), float(ruv @ normal), float(rvv @ normal)
        return (g22 * b11 - 2 * g12 * b12 + g11 * b22) / (g11 * g22 - g12 * g12)


def _stack(x, y, z):
    return np.stack(np.broadcast_arrays(x, y, z), axis=-1)


class Plane(ParametricSurface):
    """The z = 0 plane, r(u, v) = (u, v, 0)."""

    name = "plane"

    def position(self, u, v):
        return _stack(u, v, np.zeros_like(u))

    def partials(self, u, v):
        one, zero = np.ones_like(u), np.zeros_like(u)
        return _stack(one, zero, zero), _stack(zero, one, zero)

    def second_partials(self, u, v):
        zero = np.zeros_like(u)
        z3 = _stack(zero, zero, zero)
        return z3, z3, z3


class Sphere(ParametricSurface):
    """Radius-R sphere in colatitude/longitude coordinates (theta, phi).

    Poles are excluded by a small margin; the normal is outward and
    H = -2/R everywhere.
    """

    name = "sphere"
    u_range = (0.0, math.pi)
    v_periodic = True
    margin = 1e-9

    def __init__(self, radius: float):
        if radius <= 0:
            raise ValueError("radius must be positive")
        self.radius = float(radius)

    def position(self, u, v):
        r = self.radius
        return _stack(r * np.sin(u) * np.cos(v), r * np.sin(u) * np.sin(v),
                      r * np.cos(u))

    def partials(self, u, v):
        r = self.radius
        ru = _stack(r * np.cos(u) * np.cos(v), r * np.cos(u) * np.sin(v),
                    -r * np.sin(u))
        rv = _stack(-r * np.sin(u) * np.sin(v), r * np.sin(u) * np.cos(v),
                    np.zeros_like(u))
        return ru, rv

    def second_partials(self, u, v):
        r = self.radius
        ruu = -self.position(u, v)
        ruv = _stack(-r * np.cos(u) * np.sin(v), r * np.cos(u) * np.cos(v),
                     np.zeros_like(u))
        rvv = _stack(-r * np.sin(u) * np.cos(v), -r * np.sin(u) * np.sin(v),
                     np.zeros_like(u))
        return ruu, ruv, rvv


class Cylinder(ParametricSurface):
    """Radius-R circular cylinder, r(z, phi) = (R cos phi, R sin phi, z)."""

    name = "cylinder"
    v_periodic = True

    def __init__(self, radius: float):
        if radius <= 0:
            raise ValueError("radius must be positive")
        self.radius = float(radius)

    def position(self, u, v):
        r = self.radius
        return _stack(r * np.cos(v), r * np.sin(v), u)

    def partials(self, u, v):
        zero, one = np.zeros_like(u), np.ones_like(u)
        ru = _stack(zero, zero, one)
        rv = _stack(-self.radius * np.sin(v), self.radius * np.cos(v), zero)
        return ru, rv

    def second_partials(self, u, v):
        zero = np.zeros_like(u)
        z3 = _stack(zero, zero, zero)
        rvv = _stack(-self.radius * np.cos(v), -self.radius * np.sin(v), zero)
        return z3, z3, rvv


class Torus(ParametricSurface):
    """Torus of revolution; (theta, phi) run around the tube and the axis."""

    name = "torus"
    u_periodic = True
    v_periodic = True

    def __init__(self, major: float, minor: float):
        if not 0 < minor < major:
            raise ValueError("require 0 < minor < major radius")
        self.major = float(major)
        self.minor = float(minor)

    def position(self, u, v):
        w = self.major + self.minor * np.cos(u)
        return _stack(w * np.cos(v), w * np.sin(v), self.minor * np.sin(u))

    def partials(self, u, v):
        r = self.minor
        w = self.major + r * np.cos(u)
        ru = _stack(-r * np.sin(u) * np.cos(v), -r * np.sin(u) * np.sin(v),
                    r * np.cos(u))
        rv = _stack(-w * np.sin(v), w * np.cos(v), np.zeros_like(u))
        return ru, rv

    def second_partials(self, u, v):
        r = self.minor
        w = self.major + r * np.cos(u)
        ruu = _stack(-r * np.cos(u) * np.cos(v), -r * np.cos(u) * np.sin(v),
                     -r * np.sin(u))
        ruv = _stack(r * np.sin(u) * np.sin(v), -r * np.sin(u) * np.cos(v),
                     np.zeros_like(u))
        rvv = _stack(-w * np.cos(v), -w * np.sin(v), np.zeros_like(u))
        return ruu, ruv, rvv


class Catenoid(ParametricSurface):
    """Catenoid with waist parameter c, r(s, phi) = (c cosh(s/c) cos phi,
    c cosh(s/c) sin phi, s). Minimal: H = 0 identically."""

    name = "catenoid"
    u_range = (-2.0, 2.0)
    v_periodic = True

    def __init__(self, waist: float = 1.0):
        if waist <= 0:
            raise ValueError("waist must be positive")
        self.waist = float(waist)

    def _rho(self, u):
        c = self.waist
        return c * np.cosh(u / c), np.sinh(u / c), np.cosh(u / c) / c

    def position(self, u, v):
        rho, _, _ = self._rho(u)
        return _stack(rho * np.cos(v), rho * np.sin(v), u)

    def partials(self, u, v):
        rho, drho, _ = self._rho(u)
        ru = _stack(drho * np.cos(v), drho * np.sin(v), np.ones_like(u))
        rv = _stack(-rho * np.sin(v), rho * np.cos(v), np.zeros_like(u))
        return ru, rv

    def second_partials(self, u, v):
        rho, drho, ddrho = self._rho(u)
        zero = np.zeros_like(u)
        ruu = _stack(ddrho * np.cos(v), ddrho * np.sin(v), zero)
        ruv = _stack(-drho * np.sin(v), drho * np.cos(v), zero)
        rvv = _stack(-rho * np.cos(v), -rho * np.sin(v), zero)
        return ruu, ruv, rvv


class Enneper(ParametricSurface):
    """Enneper's minimal surface on [-1.5, 1.5]^2 (polynomial chart)."""

    name = "enneper"
    u_range = (-1.5, 1.5)
    v_range = (-1.5, 1.5)

    def position(self, u, v):
        return _stack(u - u ** 3 / 3.0 + u * v * v,
                      v - v ** 3 / 3.0 + u * u * v,
                      u * u - v * v)

    def partials(self, u, v):
        ru = _stack(1.0 - u * u + v * v, 2.0 * u * v, 2.0 * u)
        rv = _stack(2.0 * u * v, 1.0 - v * v + u * u, -2.0 * v)
        return ru, rv

    def second_partials(self, u, v):
        two = np.full_like(u, 2.0)
        zero = np.zeros_like(u)
        ruu = _stack(-2.0 * u, 2.0 * v, two)
        ruv = _stack(2.0 * v, 2.0 * u, zero)
        rvv = _stack(2.0 * u, -2.0 * v, -two)
        return ruu, ruv, rvv


class MongeGraph(ParametricSurface):
    """Graph surface z = f(x, y) over a rectangle; the caller supplies f
    and its first and second partials analytically (all must broadcast
    over numpy arrays)."""

    name = "monge"

    def __init__(self, f: Callable, fx: Callable, fy: Callable,
                 fxx: Callable, fxy: Callable, fyy: Callable,
                 x_range: tuple[float, float], y_range: tuple[float, float],
                 name: str = "monge"):
        if not (x_range[0] < x_range[1] and y_range[0] < y_range[1]):
            raise ValueError("empty domain rectangle")
        self.f, self.fx, self.fy = f, fx, fy
        self.fxx, self.fxy, self.fyy = fxx, fxy, fyy
        self.u_range = (float(x_range[0]), float(x_range[1]))
        self.v_range = (float(y_range[0]), float(y_range[1]))
        self.name = name

    def position(self, u, v):
        return _stack(u, v, self.f(u, v))

    def partials(self, u, v):
        one, zero = np.ones_like(u), np.zeros_like(u)
        return _stack(one, zero, self.fx(u, v)), _stack(zero, one, self.fy(u, v))

    def second_partials(self, u, v):
        zero = np.zeros_like(u)
        return (_stack(zero, zero, self.fxx(u, v)),
                _stack(zero, zero, self.fxy(u, v)),
                _stack(zero, zero, self.fyy(u, v)))


def saddle(extent: float = 2.0) -> MongeGraph:
    """The saddle graph z = x^2 - y^2 on [-extent, extent]^2."""
    return MongeGraph(
        f=lambda x, y: x * x - y * y,
        fx=lambda x, y: 2.0 * x,
        fy=lambda x, y: -2.0 * y,
        fxx=lambda x, y: np.full_like(np.asarray(x, float), 2.0),
        fxy=lambda x, y: np.zeros_like(np.asarray(x, float)),
        fyy=lambda x, y: np.full_like(np.asarray(x, float), -2.0),
        x_range=(-extent, extent),
        y_range=(-extent, extent),
        name="saddle",
    )


def surface_from_name(name: str, **params) -> ParametricSurface:
    """CLI/test factory: build a surface from its name and keyword
    parameters (R, r, c as applicable)."""
    key = name.strip().lower()
    try:
        if key == "plane":
            return Plane()
        if key == "sphere":
            return Sphere(radius=params.get("R", 1.0))
        if key == "cylinder":
            return Cylinder(radius=params.get("R", 1.0))
        if key == "torus":
            return Torus(major=params.get("R", 2.0), minor=params.get("r", 0.5))
        if key == "catenoid":
            return Catenoid(waist=params.get("c", 1.0))
        if key == "enneper":
            return Enneper()
        if key == "saddle":
            return saddle()
    except ValueError as exc:
        raise ValueError(f"bad parameters for surface '{name}': {exc}") from exc
    raise ValueError(f"unknown surface '{name}'")


def bundled_surfaces() -> list[ParametricSurface]:
    """The stock surfaces exercised by the verification suites."""
    return [
        Plane(),
        Sphere(1.0),
        Sphere(2.0),
        Cylinder(1.0),
        Torus(2.0, 0.5),
        Catenoid(1.0),
        Enneper(),
        saddle(),
    ]
