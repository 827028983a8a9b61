import math

import numpy as np
import pytest

from qmod.geometry import RingCondenser, regular_polygon, validate_polygon
from qmod.meshing import (
    Mesh,
    MeshError,
    RefinementMarking,
    doerfler_marking,
    mesh_edges,
    mesh_to_json,
    refine,
    triangle_areas,
    triangle_min_angles,
    triangulate,
)


def euler_characteristic(mesh: Mesh) -> int:
    return mesh.n_nodes - mesh_edges(mesh.triangles).shape[0] + mesh.n_triangles


def edge_use_counts(mesh: Mesh):
    e = np.concatenate(
        [mesh.triangles[:, [0, 1]], mesh.triangles[:, [1, 2]], mesh.triangles[:, [2, 0]]]
    )
    e.sort(axis=1)
    uniq, counts = np.unique(e, axis=0, return_counts=True)
    return uniq, counts


def assert_conforming(mesh: Mesh):
    uniq, counts = edge_use_counts(mesh)
    assert set(counts.tolist()) <= {1, 2}
    rim = {tuple(x) for x in uniq[counts == 1].tolist()}
    tagged = {tuple(sorted((a, b))) for a, b, _ in mesh.boundary_edges}
    assert rim == tagged


def point_segment_distance(p, a, b):
    d = (b[0] - a[0], b[1] - a[1])
    ln2 = d[0] * d[0] + d[1] * d[1]
    t = max(0.0, min(1.0, ((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / ln2))
    proj = (a[0] + t * d[0], a[1] + t * d[1])
    return math.hypot(p[0] - proj[0], p[1] - proj[1])


class TestTriangulate:
    def test_unit_square_area_conserved(self, unit_square_quad):
        m = triangulate(unit_square_quad, 0.5)
        assert m.n_triangles >= 2
        assert m.areas.sum() == pytest.approx(1.0, abs=1e-12)
        assert m.areas.max() <= 0.5 + 1e-15

    def test_square_ring_area(self, square_ring):
        m = triangulate(square_ring, 0.5)
        assert m.areas.sum() == pytest.approx(15.0, abs=1e-12)

    def test_all_areas_positive(self, unit_square_quad):
        m = triangulate(unit_square_quad, 0.05)
        assert m.areas.min() > 0

    def test_gamma2_edges_on_segment(self, rectangle_quad):
        m = triangulate(rectangle_quad, 0.1)
        z2 = rectangle_quad.points[1]
        z3 = rectangle_quad.points[2]
        a, b = (z2.x, z2.y), (z3.x, z3.y)
        for i, j, tag in m.boundary_edges:
            if tag != "Gamma2":
                continue
            for nid in (i, j):
                assert point_segment_distance(m.nodes[nid], a, b) <= 1e-12

    def test_marked_vertices_are_nodes(self, rectangle_quad):
        m = triangulate(rectangle_quad, 0.05)
        for p in rectangle_quad.points:
            d = np.hypot(m.nodes[:, 0] - p.x, m.nodes[:, 1] - p.y).min()
            assert d == 0.0

    def test_euler_simply_connected(self, unit_square_quad):
        m = triangulate(unit_square_quad, 0.02)
        assert euler_characteristic(m) == 1

    def test_euler_ring(self, square_ring):
        m = triangulate(square_ring, 0.3)
        assert euler_characteristic(m) == 0

    def test_conforming(self, unit_square_quad, square_ring):
        assert_conforming(triangulate(unit_square_quad, 0.03))
        assert_conforming(triangulate(square_ring, 0.4))

    def test_min_angle_on_friendly_domains(self, unit_square_quad, square_ring):
        for m in (triangulate(unit_square_quad, 0.02), triangulate(square_ring, 0.3)):
            assert math.degrees(triangle_min_angles(m.nodes, m.triangles).min()) >= 25.0 - 1e-9

    def test_arc_polylines_reconstructed(self, rectangle_quad):
        m = triangulate(rectangle_quad, 0.07)
        pts = rectangle_quad.points
        for j in range(4):
            tag = f"Gamma{j + 1}"
            za, zb = pts[j], pts[(j + 1) % 4]
            edges = [(a, b) for a, b, t in m.boundary_edges if t == tag]
            assert edges
            # every tagged node lies on the arc segment
            for a, b in edges:
                for nid in (a, b):
                    assert point_segment_distance(m.nodes[nid], (za.x, za.y), (zb.x, zb.y)) <= 1e-12
            # the tagged edges chain from z_j to z_{j+1}
            degree = {}
            for a, b in edges:
                degree[a] = degree.get(a, 0) + 1
                degree[b] = degree.get(b, 0) + 1
            ends = [n for n, d in degree.items() if d == 1]
            end_pts = sorted((m.nodes[n][0], m.nodes[n][1]) for n in ends)
            want = sorted([(za.x, za.y), (zb.x, zb.y)])
            assert np.allclose(end_pts, want, atol=1e-12)

    def test_ring_tags(self, square_ring):
        m = triangulate(square_ring, 0.4)
        assert m.tags() == {"PlateE", "PlateF"}

    def test_max_area_respected_96gon_ring(self):
        ring = RingCondenser(regular_polygon(96, 2.0), regular_polygon(96, 1.0))
        area = math.pi * 3.0
        m = triangulate(ring, area / 64.0)
        assert m.areas.max() <= area / 64.0 + 1e-13
        assert euler_characteristic(m) == 0

    def test_bad_max_area(self, unit_square_quad):
        with pytest.raises(MeshError):
            triangulate(unit_square_quad, 0.0)

    def test_bad_domain_type(self):
        with pytest.raises(TypeError):
            triangulate(validate_polygon([(0, 0), (1, 0), (0, 1)]), 0.1)

    def test_thin_sliver_quad_meshes(self):
        # near-degenerate but valid geometry must still mesh (or raise, never hang)
        from qmod.geometry import quad_from_points

        q = quad_from_points(complex(0.05, 0.05), complex(-0.9986, 0.0526), 0j, 1 + 0j)
        m = triangulate(q, 0.01)
        assert_conforming(m)

    def test_mesh_json_shape(self, unit_square_quad):
        m = triangulate(unit_square_quad, 0.5)
        j = mesh_to_json(m)
        assert set(j) == {"nodes", "triangles", "boundary"}
        assert len(j["nodes"]) == m.n_nodes
        assert all(len(t) == 3 for t in j["triangles"])
        assert all(isinstance(b[2], str) for b in j["boundary"])


class TestRefine:
    def test_mark_all_doubles(self, rectangle_quad):
        m = triangulate(rectangle_quad, 0.2)
        mk = RefinementMarking(np.ones(m.n_triangles), tuple(range(m.n_triangles)))
        m2 = refine(m, mk)
        assert m2.n_triangles >= 2 * m.n_triangles
        assert m2.areas.sum() == pytest.approx(m.areas.sum(), abs=1e-12)

    def test_no_marks_identity(self, rectangle_quad):
        m = triangulate(rectangle_quad, 0.2)
        mk = RefinementMarking(np.zeros(m.n_triangles), ())
        assert refine(m, mk) is m

    def test_nestedness_per_parent(self, rectangle_quad):
        m = triangulate(rectangle_quad, 0.2)
        mk = doerfler_marking(np.arange(1.0, m.n_triangles + 1.0))
        m2 = refine(m, mk)
        sums = np.zeros(m.n_triangles)
        np.add.at(sums, np.array(m2.parents), m2.areas)
        assert np.abs(sums - m.areas).max() <= 1e-12

    def test_conforming_after_refines(self, rectangle_quad):
        m = triangulate(rectangle_quad, 0.2)
        rng = np.random.default_rng(7)
        for _ in range(5):
            mk = doerfler_marking(rng.random(m.n_triangles))
            m = refine(m, mk)
            assert_conforming(m)

    def test_min_angle_bound(self, rectangle_quad):
        m0 = triangulate(rectangle_quad, 0.2)
        a0 = triangle_min_angles(m0.nodes, m0.triangles).min()
        m = m0
        rng = np.random.default_rng(3)
        for _ in range(6):
            mk = doerfler_marking(rng.random(m.n_triangles))
            m = refine(m, mk)
        aN = triangle_min_angles(m.nodes, m.triangles).min()
        assert aN >= a0 / 2.0 - 1e-12

    def test_tags_propagate(self, rectangle_quad):
        m = triangulate(rectangle_quad, 0.2)
        mk = RefinementMarking(np.ones(m.n_triangles), tuple(range(m.n_triangles)))
        m2 = refine(m, mk)
        assert m2.tags() == m.tags()
        # total tagged length per tag is conserved
        def tag_length(mesh):
            out = {}
            for a, b, t in mesh.boundary_edges:
                out[t] = out.get(t, 0.0) + math.hypot(*(mesh.nodes[a] - mesh.nodes[b]))
            return out
        l1, l2 = tag_length(m), tag_length(m2)
        for t in l1:
            assert l2[t] == pytest.approx(l1[t], rel=1e-12)

    def test_new_nodes_are_edge_midpoints(self, rectangle_quad):
        m = triangulate(rectangle_quad, 0.2)
        mk = RefinementMarking(np.ones(m.n_triangles), tuple(range(m.n_triangles)))
        m2 = refine(m, mk)
        assert m2.new_nodes
        for mid, a, b in m2.new_nodes:
            assert np.allclose(m2.nodes[mid], 0.5 * (m2.nodes[a] + m2.nodes[b]), atol=0)

    def test_marking_mismatch_rejected(self, rectangle_quad):
        m = triangulate(rectangle_quad, 0.2)
        with pytest.raises(ValueError):
            refine(m, RefinementMarking(np.ones(3), (0,)))


class TestDoerfler:
    def test_mass_threshold(self):
        ind = np.array([3.0, 1.0, 2.0, 0.5])
        mk = doerfler_marking(ind, theta=0.5)
        mass = ind[list(mk.marked)] ** 2
        assert mass.sum() >= 0.5 * (ind**2).sum()

    def test_minimality(self):
        ind = np.array([3.0, 1.0, 2.0, 0.5])
        mk = doerfler_marking(ind, theta=0.5)
        mass = sorted((ind**2).tolist(), reverse=True)
        without_last = sum(mass[: len(mk.marked) - 1])
        assert without_last < 0.5 * (ind**2).sum()

    def test_empty_when_zero(self):
        mk = doerfler_marking(np.zeros(5))
        assert mk.marked == ()

    def test_nonempty_when_positive(self):
        mk = doerfler_marking(np.array([0.0, 1e-30, 0.0]))
        assert mk.marked

    def test_invalid_marking_rejected(self):
        with pytest.raises(ValueError):
            RefinementMarking(np.array([1.0, 0.0]), ())
        with pytest.raises(ValueError):
            RefinementMarking(np.array([-1.0]), (0,))
