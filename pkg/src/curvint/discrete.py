"""Vector mean curvature on triangle meshes.

At an interior vertex O whose incident triangles have areas A_i, opposite
edges of length a_i, and in-plane unit normals n_i of those edges pointing
away from O, the discrete vector mean curvature is

    B = sum(a_i n_i) / sum(A_i).

The numerator equals exactly -2 times the gradient of total mesh area with
respect to the position of O, so B = 0 on flat meshes and at any critical
point of area. B points opposite the area gradient (inward on a convex
closed mesh), matching the analytic sign convention in `curvint.surfaces`
(outward-normal sphere has H = -2/R).

Note that the raw one-ring quotient is not a consistent pointwise
estimator of N * H: under refinement of a smooth surface it approaches a
valence- and shape-dependent multiple of it (2/3 at symmetric valence-6
configurations). The same holds for the piecewise-linear Laplacian below,
which shares its normalization.

Replacing n_i by the in-plane normal derivative of a piecewise-linear
vertex field along the opposite edge extends the formula to a surface
Laplacian; applied to the three coordinate fields it reproduces B exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundaryVertexError
from .mesh import TriMesh, build_star

__all__ = [
    "CurvatureSample",
    "star_sum",
    "vector_mean_curvature",
    "area_gradient",
    "laplacian",
    "curvature_field",
    "star_sums",
    "ring_areas",
    "laplacian_field",
]


@dataclass(frozen=True)
class CurvatureSample:
    """Discrete vector mean curvature at a vertex.

    `direction` is None (and near_minimal set) when |B| falls below
    tol_direction relative to the star scale sum(a_i)/sum(A_i): near a
    minimal configuration the direction B/|B| is ill-conditioned and is
    withheld rather than reported as a normal estimate.
    """

    vector: np.ndarray
    magnitude: float
    direction: np.ndarray | None
    near_minimal: bool


def star_sum(mesh: TriMesh, v: int) -> np.ndarray:
    """sum(a_i n_i) over the one-ring of v (no area division); defined for
    boundary vertices too."""
    star = build_star(mesh, v)
    out = np.zeros(3)
    for e in star.entries:
        out += e.edge_length * e.normal
    return out


def vector_mean_curvature(mesh: TriMesh, v: int, tol_direction: float = 1e-8,
                          allow_boundary: bool = False) -> CurvatureSample:
    """B = sum(a_i n_i) / sum(A_i) at vertex v.

    Boundary vertices are refused unless allow_boundary is set (the
    half-ring value is not meaningful as a curvature).
    """
    star = build_star(mesh, v)
    if star.is_boundary and not allow_boundary:
        raise BoundaryVertexError(f"vertex {v} lies on the mesh boundary")
    num = np.zeros(3)
    for e in star.entries:
        num += e.edge_length * e.normal
    vec = num / star.ring_area
    magnitude = float(np.linalg.norm(vec))
    scale = star.total_edge_length / star.ring_area
    if magnitude < tol_direction * scale:
        return CurvatureSample(vec, magnitude, None, True)
    return CurvatureSample(vec, magnitude, vec / magnitude, False)


def area_gradient(mesh: TriMesh, v: int) -> np.ndarray:
    """Gradient of total mesh area with respect to the position of v.

    Computed per incident triangle from d/dO [ |(P-O) x (Q-O)| / 2 ]
    = -(Q-P) x m / (2 |m|) with m the face cross product; this is the
    in-plane vector perpendicular to the opposite edge, magnitude a_i / 2,
    pointing from the edge toward v. Boundary vertices are fine.
    """
    incident = mesh.vertex_faces(v)
    o = mesh.positions[v]
    grad = np.zeros(3)
    for fi in incident:
        tri = mesh.faces[fi]
        corner = int(np.argmax(tri == v))
        p = mesh.positions[tri[(corner + 1) % 3]]
        q = mesh.positions[tri[(corner + 2) % 3]]
        m = np.cross(p - o, q - o)
        grad -= np.cross(q - p, m) / (2.0 * np.linalg.norm(m))
    return grad


def laplacian(mesh: TriMesh, v: int, values) -> float:
    """Surface Laplacian of a per-vertex scalar field at interior vertex v:
    sum(a_i (g_i . n_i)) / sum(A_i) with g_i the constant gradient of the
    piecewise-linear interpolant on triangle i.

    Exact zero for fields that are affine in space over a flat star;
    applied to a coordinate field it returns that component of B.
    """
    values = _validated_field(mesh, values)
    star = build_star(mesh, v)
    if star.is_boundary:
        raise BoundaryVertexError(f"vertex {v} lies on the mesh boundary")
    o = mesh.positions[v]
    fo = values[v]
    num = 0.0
    for e in star.entries:
        p_idx, q_idx = e.opposite
        p, q = mesh.positions[p_idx], mesh.positions[q_idx]
        m = np.cross(p - o, q - o)
        norm_m = float(np.linalg.norm(m))
        mhat = m / norm_m
        # gradient of the linear interpolant: sum of values times hat
        # function gradients (mhat x opposite_edge) / |m|
        g = (fo * np.cross(mhat, q - p)
             + values[p_idx] * np.cross(mhat, o - q)
             + values[q_idx] * np.cross(mhat, p - o)) / norm_m
        num += e.edge_length * float(g @ e.normal)
    return num / star.ring_area


def curvature_field(mesh: TriMesh, tol_direction: float = 1e-8) -> list[CurvatureSample | None]:
    """vector_mean_curvature at every vertex; boundary vertices yield None."""
    boundary = mesh.boundary_vertices()
    out: list[CurvatureSample | None] = []
    for v in range(mesh.n_vertices):
        if boundary[v]:
            out.append(None)
        else:
            out.append(vector_mean_curvature(mesh, v, tol_direction))
    return out


# ---------------------------------------------------------------------------
# whole-mesh vectorized paths (used by the flow; agree with the per-vertex
# functions to roundoff)


def _corner_contributions(mesh: TriMesh):
    p0, p1, p2 = mesh.corners()
    m = np.cross(p1 - p0, p2 - p0)
    norm_m = np.linalg.norm(m, axis=1, keepdims=True)
    return (p0, p1, p2), m, norm_m


def star_sums(mesh: TriMesh) -> np.ndarray:
    """sum(a_i n_i) for every vertex at once: per corner the contribution
    is (e x m) / |m| with e its opposite edge."""
    corners, m, norm_m = _corner_contributions(mesh)
    out = np.zeros((mesh.n_vertices, 3))
    for c, (i, j) in enumerate([(1, 2), (2, 0), (0, 1)]):
        e = corners[j] - corners[i]
        np.add.at(out, mesh.faces[:, c], np.cross(e, m) / norm_m)
    return out


def ring_areas(mesh: TriMesh) -> np.ndarray:
    """sum(A_i) over the one-ring of every vertex."""
    areas = mesh.face_areas()
    out = np.zeros(mesh.n_vertices)
    for c in range(3):
        np.add.at(out, mesh.faces[:, c], areas)
    return out


def laplacian_field(mesh: TriMesh, values) -> np.ndarray:
    """Surface Laplacian of a per-vertex field at every interior vertex;
    boundary entries are nan."""
    values = _validated_field(mesh, values)
    corners, m, norm_m = _corner_contributions(mesh)
    mhat = m / norm_m
    f = [values[mesh.faces[:, c]] for c in range(3)]
    g = (f[0][:, None] * np.cross(mhat, corners[2] - corners[1])
         + f[1][:, None] * np.cross(mhat, corners[0] - corners[2])
         + f[2][:, None] * np.cross(mhat, corners[1] - corners[0])) / norm_m
    num = np.zeros(mesh.n_vertices)
    for c, (i, j) in enumerate([(1, 2), (2, 0), (0, 1)]):
        e = corners[j] - corners[i]
        an = np.cross(e, m) / norm_m  # a_i n_i
        np.add.at(num, mesh.faces[:, c], np.einsum("ij,ij->i", g, an))
    out = num / ring_areas(mesh)
    out[mesh.boundary_vertices()] = np.nan
    return out


def _validated_field(mesh: TriMesh, values) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.shape != (mesh.n_vertices,):
        raise ValueError(
            f"field must have one value per vertex ({mesh.n_vertices}), got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise ValueError("field values must be finite")
    return values
