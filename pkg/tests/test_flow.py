import numpy as np
import pytest

import curvint as ci
from curvint import BoundaryVertexError, CollapseError


def test_open_mesh_refused():
    g = ci.make_grid(4)
    with pytest.raises(BoundaryVertexError):
        ci.mcf_step(g, 1e-3)
    with pytest.raises(BoundaryVertexError):
        ci.run_flow(g, 1e-3, 3)


def test_icosphere_moves_inward():
    mesh = ci.make_icosphere(3, 1.0)
    stepped = ci.mcf_step(mesh, 1e-3)
    displacement = stepped.positions - mesh.positions
    inner = np.einsum("ij,ij->i", mesh.positions, displacement)
    assert np.all(inner < 0.0)


def test_step_is_linear_in_dt():
    mesh = ci.make_icosphere(2, 1.0)
    d1 = ci.mcf_step(mesh, 1e-3).positions - mesh.positions
    d2 = ci.mcf_step(mesh, 5e-4).positions - mesh.positions
    ratio = np.linalg.norm(d1) / np.linalg.norm(d2)
    assert abs(ratio - 2.0) <= 1e-9


def test_zero_time_step_is_identity():
    mesh = ci.make_icosphere(1, 1.0)
    assert ci.mcf_step(mesh, 0.0) is mesh
    trace, final = ci.run_flow(mesh, 0.0, 5)
    assert trace.stop_reason is None
    assert len(trace.steps) == 6
    areas = {s.area for s in trace.steps}
    assert len(areas) == 1
    np.testing.assert_array_equal(final.positions, mesh.positions)


def test_negative_dt_rejected():
    mesh = ci.make_icosphere(1, 1.0)
    with pytest.raises(ValueError):
        ci.mcf_step(mesh, -1e-3)
    with pytest.raises(ValueError):
        ci.run_flow(mesh, -1e-3, 2)


def test_area_descent_below_probed_step():
    mesh = ci.make_icosphere(2, 1.0)
    area0 = ci.total_area(mesh)
    dt = 1e-2
    while ci.total_area(ci.mcf_step(mesh, dt)) >= area0:
        dt *= 0.5
    trace, _ = ci.run_flow(mesh, dt, 30)
    assert trace.stop_reason is None
    areas = [s.area for s in trace.steps]
    assert all(b < a for a, b in zip(areas, areas[1:]))


def test_first_order_area_change():
    mesh = ci.make_icosphere(2, 1.0)
    area0 = ci.total_area(mesh)
    predicted = -sum(
        float(ci.star_sum(mesh, v) @ ci.star_sum(mesh, v))
        / (2.0 * ci.build_star(mesh, v).ring_area)
        for v in range(mesh.n_vertices))
    dt = 1e-4
    d_full = ci.total_area(ci.mcf_step(mesh, dt)) - area0
    d_half = ci.total_area(ci.mcf_step(mesh, dt / 2)) - area0
    assert 1.9 <= d_full / d_half <= 2.1
    assert abs(d_full / dt - predicted) <= 0.02 * abs(predicted)


def test_symmetry_preserved_through_flow():
    mesh = ci.make_icosphere(3, 1.0)
    trace, final = ci.run_flow(mesh, 1e-3, 100)  # t = 0.1
    assert trace.stop_reason is None
    norms = np.linalg.norm(final.positions, axis=1)
    spread = (norms.max() - norms.min()) / norms.mean()
    assert spread <= 0.01


def test_collapse_detected():
    # a regular tetrahedron whose vertices all land on the centroid
    verts = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], float)
    faces = [[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]]
    tetra = ci.TriMesh(verts, faces)
    b = ci.vector_mean_curvature(tetra, 0).vector
    dt_star = np.linalg.norm(verts[0]) / np.linalg.norm(b)
    with pytest.raises(CollapseError) as err:
        ci.mcf_step(tetra, dt_star)
    assert err.value.area is not None

    trace, _ = ci.run_flow(tetra, dt_star, 3)
    assert trace.stop_reason is not None
    assert "collapse" in trace.stop_reason


def test_oversized_step_stops_with_reason():
    mesh = ci.make_icosphere(1, 1.0)
    trace, final = ci.run_flow(mesh, 0.2, 50)
    assert trace.stop_reason is not None
    areas = [s.area for s in trace.steps]
    assert all(b < a for a, b in zip(areas, areas[1:]))  # only accepted steps recorded


def test_trace_contents():
    mesh = ci.make_icosphere(2, 1.0)
    trace, _ = ci.run_flow(mesh, 1e-3, 10)
    assert [s.index for s in trace.steps] == list(range(11))
    for s in trace.steps:
        assert s.area > 0
        assert s.min_face_area > 0
        assert s.max_curvature > 0
    assert trace.dt == 1e-3
