"""Indexed triangle meshes: data model, OBJ/OFF input/output, stock
primitives, and one-ring (vertex star) extraction."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    IsolatedVertexError,
    MeshValidationError,
    ParseError,
)

__all__ = [
    "TriMesh",
    "StarEntry",
    "VertexStar",
    "load_mesh",
    "save_mesh",
    "mesh_to_text",
    "make_grid",
    "make_icosphere",
    "make_tube",
    "make_catenoid",
    "make_primitive",
    "build_star",
    "total_area",
]

MIN_FACE_AREA = 1e-14


class TriMesh:
    """Immutable triangle mesh: float64 positions (V, 3) and int face
    index triples (F, 3)."""

    def __init__(self, positions, faces, allow_degenerate: bool = False):
        positions = np.array(positions, dtype=float)
        faces = np.array(faces, dtype=np.int64)
        if positions.ndim != 2 or positions.shape[1] != 3:
            raise MeshValidationError("positions must have shape (V, 3)")
        if faces.size == 0:
            faces = faces.reshape(0, 3)
        if faces.ndim != 2 or faces.shape[1] != 3:
            raise MeshValidationError("faces must have shape (F, 3)")
        if not np.all(np.isfinite(positions)):
            raise MeshValidationError("positions must be finite")
        if faces.size:
            if faces.min() < 0 or faces.max() >= len(positions):
                bad = int(np.argmax((faces < 0).any(axis=1) | (faces >= len(positions)).any(axis=1)))
                raise MeshValidationError(f"face {bad} references a missing vertex", face=bad)
            same = (faces[:, 0] == faces[:, 1]) | (faces[:, 1] == faces[:, 2]) | (faces[:, 0] == faces[:, 2])
            if same.any():
                bad = int(np.argmax(same))
                raise MeshValidationError(f"face {bad} repeats a vertex", face=bad)
        self.positions = positions
        self.faces = faces
        self.positions.setflags(write=False)
        self.faces.setflags(write=False)
        self._face_areas = None
        self._vertex_faces = None
        self._boundary = None
        if not allow_degenerate and len(faces):
            areas = self.face_areas()
            if areas.min() < MIN_FACE_AREA:
                bad = int(np.argmin(areas))
                raise MeshValidationError(
                    f"face {bad} is degenerate (area {areas[bad]:.3e})", face=bad)

    @property
    def n_vertices(self) -> int:
        return len(self.positions)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def corners(self):
        """Positions of the three corners of every face, each (F, 3)."""
        return (self.positions[self.faces[:, 0]],
                self.positions[self.faces[:, 1]],
                self.positions[self.faces[:, 2]])

    def face_areas(self) -> np.ndarray:
        if self._face_areas is None:
            p0, p1, p2 = self.corners()
            areas = 0.5 * np.linalg.norm(np.cross(p1 - p0, p2 - p0), axis=1)
            areas.setflags(write=False)
            self._face_areas = areas
        return self._face_areas

    def vertex_faces(self, v: int) -> np.ndarray:
        """Indices of the faces incident to vertex v."""
        if self._vertex_faces is None:
            order = np.argsort(self.faces.ravel(), kind="stable")
            counts = np.bincount(self.faces.ravel(), minlength=self.n_vertices)
            splits = np.cumsum(counts)[:-1]
            self._vertex_faces = [np.sort(part) for part in
                                  np.split(order // 3, splits)]
        if not 0 <= v < self.n_vertices:
            raise MeshValidationError(f"vertex {v} out of range")
        return self._vertex_faces[v]

    def boundary_vertices(self) -> np.ndarray:
        """Boolean mask of vertices touching an edge used by one face only."""
        if self._boundary is None:
            mask = np.zeros(self.n_vertices, dtype=bool)
            if len(self.faces):
                e = np.concatenate([self.faces[:, [0, 1]], self.faces[:, [1, 2]],
                                    self.faces[:, [2, 0]]])
                e = np.sort(e, axis=1)
                _, idx, counts = np.unique(e, axis=0, return_index=True, return_counts=True)
                open_edges = e[idx[counts == 1]]
                mask[open_edges.ravel()] = True
            mask.setflags(write=False)
            self._boundary = mask
        return self._boundary

    def is_closed(self) -> bool:
        return not bool(self.boundary_vertices().any())

    def with_positions(self, positions, allow_degenerate: bool = False) -> "TriMesh":
        """Same connectivity with replaced coordinates (revalidated)."""
        return TriMesh(positions, self.faces, allow_degenerate=allow_degenerate)


def total_area(mesh: TriMesh) -> float:
    """Sum of the per-triangle areas (half cross-product magnitudes)."""
    return float(mesh.face_areas().sum())


# ---------------------------------------------------------------------------
# vertex stars


@dataclass(frozen=True)
class StarEntry:
    """One triangle of a one-ring: its index, area, the edge opposite the
    center vertex (endpoint indices and length), and the unit in-plane
    normal of that edge pointing away from the center."""

    face: int
    area: float
    opposite: tuple[int, int]
    edge_length: float
    normal: np.ndarray


@dataclass(frozen=True)
class VertexStar:
    """All triangles incident to a vertex; is_boundary is set when their
    opposite edges do not close into a single loop around it."""

    center: int
    entries: tuple[StarEntry, ...]
    is_boundary: bool

    @property
    def ring_area(self) -> float:
        return sum(e.area for e in self.entries)

    @property
    def total_edge_length(self) -> float:
        return sum(e.edge_length for e in self.entries)


def _opposite_edges_close(edges: list[tuple[int, int]]) -> bool:
    # single closed loop <=> every ring vertex has degree 2 and the edge
    # graph is connected with as many edges as vertices
    adjacency: dict[int, list[int]] = {}
    for a, b in edges:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    if len(edges) != len(adjacency):
        return False
    if any(len(nbrs) != 2 for nbrs in adjacency.values()):
        return False
    start = edges[0][0]
    seen = {start}
    prev, cur = None, start
    while True:
        nxt = [p for p in adjacency[cur] if p != prev]
        if not nxt:
            return False
        prev, cur = cur, nxt[0]
        if cur == start:
            break
        if cur in seen:
            return False
        seen.add(cur)
    return len(seen) == len(adjacency)


def build_star(mesh: TriMesh, v: int) -> VertexStar:
    """Collect the one-ring of vertex v.

    Per incident triangle the entry holds the opposite-edge length a and
    the unit vector n in the triangle plane, perpendicular to that edge
    and pointing from v toward it. Raises IsolatedVertexError when no
    face contains v, MeshValidationError on a degenerate incident face.
    """
    incident = mesh.vertex_faces(v)
    if len(incident) == 0:
        raise IsolatedVertexError(f"vertex {v} has no incident faces")
    o = mesh.positions[v]
    entries = []
    edges = []
    for fi in incident:
        tri = mesh.faces[fi]
        corner = int(np.argmax(tri == v))
        p_idx, q_idx = int(tri[(corner + 1) % 3]), int(tri[(corner + 2) % 3])
        p, q = mesh.positions[p_idx], mesh.positions[q_idx]
        m = np.cross(p - o, q - o)
        area = 0.5 * float(np.linalg.norm(m))
        if area < MIN_FACE_AREA:
            raise MeshValidationError(f"face {fi} incident to vertex {v} is degenerate",
                                      face=int(fi))
        e = q - p
        edge_length = float(np.linalg.norm(e))
        n = np.cross(e, m)
        n /= np.linalg.norm(n)
        entries.append(StarEntry(int(fi), area, (p_idx, q_idx), edge_length, n))
        edges.append((p_idx, q_idx))
    return VertexStar(v, tuple(entries), not _opposite_edges_close(edges))


# ---------------------------------------------------------------------------
# parsing and writing


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_obj(lines, path) -> TriMesh:
    positions = []
    faces = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "v":
            if len(tokens) < 4:
                raise ParseError("vertex record needs 3 coordinates", lineno, path)
            try:
                positions.append([float(t) for t in tokens[1:4]])
            except ValueError:
                raise ParseError("vertex record has a non-numeric coordinate",
                                 lineno, path) from None
        elif kind == "f":
            if len(tokens) < 4:
                raise ParseError("face record needs at least 3 vertices", lineno, path)
            idx = []
            for tok in tokens[1:]:
                head = tok.split("/", 1)[0]
                try:
                    i = int(head)
                except ValueError:
                    raise ParseError(f"face index '{tok}' is not an integer",
                                     lineno, path) from None
                if i <= 0:
                    raise ParseError("face indices must be positive (1-based)",
                                     lineno, path)
                idx.append(i - 1)
            for k in range(1, len(idx) - 1):  # fan triangulation
                faces.append([idx[0], idx[k], idx[k + 1]])
        # vn/vt/o/g/s/usemtl/mtllib and anything else: ignored
    return TriMesh(np.asarray(positions, float).reshape(-1, 3), faces)


def _parse_off(lines, path) -> TriMesh:
    def significant(start):
        for lineno in range(start, len(lines)):
            line = lines[lineno].split("#", 1)[0].strip()
            if line:
                yield lineno + 1, line

    stream = significant(0)
    try:
        lineno, header = next(stream)
    except StopIteration:
        raise ParseError("empty file, expected OFF header", 1, path) from None
    if header != "OFF":
        raise ParseError("expected OFF header", lineno, path)
    try:
        lineno, counts = next(stream)
    except StopIteration:
        raise ParseError("unexpected end of file, expected counts", len(lines) + 1, path) from None
    tokens = counts.split()
    if len(tokens) != 3:
        raise ParseError("counts line must be 'V F E'", lineno, path)
    try:
        n_vertices, n_faces, _ = (int(t) for t in tokens)
    except ValueError:
        raise ParseError("counts must be integers", lineno, path) from None
    if n_vertices < 0 or n_faces < 0:
        raise ParseError("counts must be nonnegative", lineno, path)

    positions = np.empty((n_vertices, 3))
    for i in range(n_vertices):
        try:
            lineno, line = next(stream)
        except StopIteration:
            raise ParseError(f"unexpected end of file, expected vertex {i}",
                             len(lines) + 1, path) from None
        tokens = line.split()
        if len(tokens) != 3:
            raise ParseError("vertex line must have 3 coordinates", lineno, path)
        try:
            positions[i] = [float(t) for t in tokens]
        except ValueError:
            raise ParseError("vertex line has a non-numeric coordinate",
                             lineno, path) from None

    faces = []
    for i in range(n_faces):
        try:
            lineno, line = next(stream)
        except StopIteration:
            raise ParseError(f"unexpected end of file, expected face {i}",
                             len(lines) + 1, path) from None
        tokens = line.split()
        try:
            sides = int(tokens[0])
        except ValueError:
            raise ParseError("face line must start with its vertex count",
                             lineno, path) from None
        if sides < 3:
            raise ParseError("polygon needs at least 3 vertices", lineno, path)
        if len(tokens) != sides + 1:
            raise ParseError(f"face line declares {sides} vertices but lists "
                             f"{len(tokens) - 1}", lineno, path)
        try:
            idx = [int(t) for t in tokens[1:]]
        except ValueError:
            raise ParseError("face line has a non-integer index", lineno, path) from None
        for k in range(1, sides - 1):  # fan triangulation
            faces.append([idx[0], idx[k], idx[k + 1]])
    return TriMesh(positions, faces)


def _infer_format(name: str | None, fmt: str | None) -> str:
    if fmt:
        fmt = fmt.lower()
        if fmt not in ("obj", "off"):
            raise ValueError(f"unknown mesh format '{fmt}'")
        return fmt
    if name:
        suffix = Path(name).suffix.lower().lstrip(".")
        if suffix in ("obj", "off"):
            return suffix
    raise ValueError("cannot infer mesh format; pass fmt='obj' or 'off'")


def load_mesh(source, fmt: str | None = None) -> TriMesh:
    """Read an OBJ or OFF mesh from a path, text, or file-like object.

    The format is inferred from the file extension unless given. Parse
    errors carry the 1-based line number.
    """
    path = None
    try:
        if isinstance(source, (str, Path)) and "\n" not in str(source):
            path = str(source)
            text = Path(source).read_bytes().decode()
        elif isinstance(source, bytes):
            text = source.decode()
        elif hasattr(source, "read"):
            text = source.read()
            if isinstance(text, bytes):
                text = text.decode()
            path = getattr(source, "name", None)
        else:
            text = str(source)
    except UnicodeDecodeError:
        raise ParseError("not a text file", 1, path) from None
    fmt = _infer_format(path, fmt)
    lines = text.splitlines()
    if fmt == "obj":
        return _parse_obj(lines, path)
    return _parse_off(lines, path)


def mesh_to_text(mesh: TriMesh, fmt: str) -> str:
    """Serialize to OBJ or OFF text; coordinates keep 17 significant
    digits so float64 values round-trip exactly."""
    fmt = _infer_format(None, fmt)
    out = io.StringIO()
    if fmt == "obj":
        for p in mesh.positions:
            out.write(f"v {_fmt(p[0])} {_fmt(p[1])} {_fmt(p[2])}\n")
        for f in mesh.faces:
            out.write(f"f {f[0] + 1} {f[1] + 1} {f[2] + 1}\n")
    else:
        out.write("OFF\n")
        out.write(f"{mesh.n_vertices} {mesh.n_faces} 0\n")
        for p in mesh.positions:
            out.write(f"{_fmt(p[0])} {_fmt(p[1])} {_fmt(p[2])}\n")
        for f in mesh.faces:
            out.write(f"3 {f[0]} {f[1]} {f[2]}\n")
    return out.getvalue()


def save_mesh(mesh: TriMesh, dest, fmt: str | None = None) -> None:
    """Write a mesh to a path or file-like object (format from the
    extension unless given)."""
    if isinstance(dest, (str, Path)):
        fmt = _infer_format(str(dest), fmt)
        Path(dest).write_text(mesh_to_text(mesh, fmt))
    else:
        fmt = _infer_format(getattr(dest, "name", None), fmt)
        dest.write(mesh_to_text(mesh, fmt))


# ---------------------------------------------------------------------------
# primitives


def make_grid(n: int) -> TriMesh:
    """Unit square [0, 1]^2 with (n+1)^2 vertices, each cell split along
    the (i, j) -> (i+1, j+1) diagonal."""
    if n < 1:
        raise ValueError("grid resolution must be >= 1")
    coords = np.linspace(0.0, 1.0, n + 1)
    xx, yy = np.meshgrid(coords, coords, indexing="xy")
    positions = np.column_stack([xx.ravel(), yy.ravel(), np.zeros((n + 1) ** 2)])

    def vid(i, j):
        return j * (n + 1) + i

    faces = []
    for j in range(n):
        for i in range(n):
            faces.append([vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)])
            faces.append([vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)])
    return TriMesh(positions, faces)


_ICO_VERTS = None
_ICO_FACES = np.array([
    [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
    [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
    [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
    [5, 4, 9], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
])


def _icosahedron() -> tuple[np.ndarray, np.ndarray]:
    global _ICO_VERTS
    if _ICO_VERTS is None:
        g = (1.0 + math.sqrt(5.0)) / 2.0
        _ICO_VERTS = np.array([
            [-1, g, 0], [1, g, 0], [-1, -g, 0], [1, -g, 0],
            [0, -1, g], [0, 1, g], [0, -1, -g], [0, 1, -g],
            [g, 0, -1], [g, 0, 1], [-g, 0, -1], [-g, 0, 1],
        ], dtype=float)
    return _ICO_VERTS.copy(), _ICO_FACES.copy()


def make_icosphere(level: int, radius: float = 1.0) -> TriMesh:
    """Icosahedron subdivided `level` times (edge midpoints), every vertex
    projected onto the sphere of the given radius. 20 * 4^level faces."""
    if not 0 <= level <= 6:
        raise ValueError("subdivision level must be between 0 and 6")
    if radius <= 0:
        raise ValueError("radius must be positive")
    verts, faces = _icosahedron()
    verts = list(verts)
    for _ in range(level):
        cache: dict[tuple[int, int], int] = {}

        def midpoint(a: int, b: int) -> int:
            key = (a, b) if a < b else (b, a)
            if key not in cache:
                cache[key] = len(verts)
                verts.append(0.5 * (verts[a] + verts[b]))
            return cache[key]

        next_faces = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            next_faces.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]])
        faces = np.array(next_faces)
    positions = np.asarray(verts)
    positions = positions * (radius / np.linalg.norm(positions, axis=1))[:, None]
    return TriMesh(positions, faces)


def _revolution_mesh(profile_r, profile_z, n_v: int) -> TriMesh:
    rings = len(profile_r)
    angles = np.linspace(0.0, 2.0 * math.pi, n_v, endpoint=False)
    positions = np.empty((rings * n_v, 3))
    for i in range(rings):
        positions[i * n_v:(i + 1) * n_v, 0] = profile_r[i] * np.cos(angles)
        positions[i * n_v:(i + 1) * n_v, 1] = profile_r[i] * np.sin(angles)
        positions[i * n_v:(i + 1) * n_v, 2] = profile_z[i]
    faces = []
    for i in range(rings - 1):
        for j in range(n_v):
            a = i * n_v + j
            b = i * n_v + (j + 1) % n_v
            c = (i + 1) * n_v + (j + 1) % n_v
            d = (i + 1) * n_v + j
            faces.extend([[a, b, c], [a, c, d]])
    return TriMesh(positions, faces)


def make_tube(radius: float, length: float, n_u: int, n_v: int) -> TriMesh:
    """Open cylinder of the given radius along z in [0, length]; n_u
    segments along the axis, n_v around. Both rims are boundary."""
    if radius <= 0 or length <= 0:
        raise ValueError("radius and length must be positive")
    if n_u < 1 or n_v < 3:
        raise ValueError("need n_u >= 1 and n_v >= 3")
    z = np.linspace(0.0, length, n_u + 1)
    return _revolution_mesh(np.full(n_u + 1, float(radius)), z, n_v)


def make_catenoid(waist: float, n_u: int, n_v: int) -> TriMesh:
    """Open catenoid r(z) = c cosh(z / c) sampled on z in [-c, c]; a
    near-minimal fixture (vertices lie on a minimal surface)."""
    if waist <= 0:
        raise ValueError("waist must be positive")
    if n_u < 1 or n_v < 3:
        raise ValueError("need n_u >= 1 and n_v >= 3")
    z = np.linspace(-waist, waist, n_u + 1)
    return _revolution_mesh(waist * np.cosh(z / waist), z, n_v)


def make_primitive(kind: str, **params) -> TriMesh:
    """Name-based primitive dispatch used by the command line."""
    key = kind.strip().lower()
    if key == "grid":
        return make_grid(int(params.get("n", 8)))
    if key == "icosphere":
        return make_icosphere(int(params.get("level", 2)), float(params.get("R", 1.0)))
    if key == "tube":
        return make_tube(float(params.get("R", 1.0)), float(params.get("L", 2.0)),
                         int(params.get("n_u", 8)), int(params.get("n_v", 16)))
    if key == "catenoid":
        return make_catenoid(float(params.get("c", 1.0)),
                             int(params.get("n_u", 8)), int(params.get("n_v", 16)))
    raise ValueError(f"unknown primitive '{kind}'")
