"""Shared helpers for the test suite: stock meshes, perturbed-mesh
factories, parameter-domain sampling boxes, and malformed-file fixtures."""

from __future__ import annotations

import numpy as np

import curvint as ci


def interior_vertices(mesh: ci.TriMesh) -> np.ndarray:
    return np.flatnonzero(~mesh.boundary_vertices())


def bundled_meshes() -> list[tuple[str, ci.TriMesh]]:
    """Mix of open and closed stock meshes."""
    return [
        ("grid8", ci.make_grid(8)),
        ("icosphere2", ci.make_icosphere(2, 1.0)),
        ("tube", ci.make_tube(1.0, 2.0, 4, 12)),
        ("catenoid", ci.make_catenoid(1.0, 4, 12)),
    ]


def perturbed_meshes(count: int = 20, scale: float = 0.02) -> list[ci.TriMesh]:
    """Deterministic family of randomly jiggled meshes (open and closed)."""
    bases = [
        lambda: ci.make_grid(5),
        lambda: ci.make_grid(7),
        lambda: ci.make_icosphere(1, 1.0),
        lambda: ci.make_tube(1.0, 2.0, 4, 10),
        lambda: ci.make_catenoid(1.0, 4, 10),
    ]
    out = []
    for k in range(count):
        base = bases[k % len(bases)]()
        rng = np.random.default_rng(1000 + k)
        jiggle = scale * rng.standard_normal(base.positions.shape)
        out.append(base.with_positions(base.positions + jiggle))
    return out


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q *= np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def sample_box(surface: ci.ParametricSurface) -> tuple[float, float, float, float]:
    """A parameter box comfortably inside the admissible domain, used to
    draw random interior points and regions."""
    boxes = {
        "plane": (-2.0, 2.0, -2.0, 2.0),
        "sphere": (0.25, np.pi - 0.25, 0.0, 2.0 * np.pi),
        "cylinder": (-2.0, 2.0, 0.0, 2.0 * np.pi),
        "torus": (0.0, 2.0 * np.pi, 0.0, 2.0 * np.pi),
        "catenoid": (-1.8, 1.8, 0.0, 2.0 * np.pi),
        "enneper": (-1.4, 1.4, -1.4, 1.4),
        "saddle": (-1.8, 1.8, -1.8, 1.8),
        "monge": (-1.0, 1.0, -1.0, 1.0),
    }
    return boxes[surface.name]


def random_interior_points(surface, rng, count):
    u0, u1, v0, v1 = sample_box(surface)
    return rng.uniform(u0, u1, count), rng.uniform(v0, v1, count)


def random_rect(surface, rng, max_extent: float = 1.2) -> ci.RectRegion:
    u0, u1, v0, v1 = sample_box(surface)
    du = rng.uniform(0.3, min(max_extent, u1 - u0))
    dv = rng.uniform(0.3, min(max_extent, v1 - v0))
    a = rng.uniform(u0, u1 - du)
    b = rng.uniform(v0, v1 - dv)
    return ci.RectRegion(a, a + du, b, b + dv)


def random_disk(surface, rng, max_rho: float = 0.5) -> ci.DiskRegion:
    u0, u1, v0, v1 = sample_box(surface)
    rho = rng.uniform(0.15, max_rho)
    uc = rng.uniform(u0 + rho, u1 - rho)
    vc = rng.uniform(v0 + rho, v1 - rho)
    return ci.DiskRegion(uc, vc, rho)


# (label, format, text, 1-based line of the defect)
MALFORMED_FIXTURES = [
    ("obj_vertex_short", "obj", "v 0 0 0\nv 1 0\nv 0 1 0\nf 1 2 3\n", 2),
    ("obj_vertex_nonnumeric", "obj", "v 0 0 zero\n", 1),
    ("obj_face_short", "obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2\n", 4),
    ("obj_face_nonint", "obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 x\n", 4),
    ("obj_face_zero_index", "obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n", 4),
    ("off_missing_header", "off", "3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n", 1),
    ("off_counts_short", "off", "OFF\n3 1\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n", 2),
    ("off_counts_nonnumeric", "off", "OFF\n3 one 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n", 2),
    ("off_truncated", "off", "OFF\n3 1 0\n0 0 0\n1 0 0\n", 5),
    ("off_vertex_short", "off", "OFF\n3 1 0\n0 0 0\n1 0\n0 1 0\n3 0 1 2\n", 4),
    ("off_face_arity", "off", "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1\n", 6),
    ("off_polygon_too_small", "off", "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n2 0 1\n", 6),
]
