import math

import pytest

from qmod.elliptic import bowman_modulus
from qmod.geometry import (
    Quadrilateral,
    RingCondenser,
    quad_from_points,
    regular_polygon,
    similarity,
    validate_polygon,
)
from qmod.modulus import CapacityResult, ModulusResult, conjugate_quad, quad_modulus, ring_capacity


def rect_quad(h: float):
    return quad_from_points(complex(1, h), complex(0, h), 0j, 1 + 0j)


class TestConjugate:
    def test_rotation(self, rectangle_quad):
        c = conjugate_quad(rectangle_quad)
        assert c.marked == (1, 2, 3, 0)

    def test_four_rotations_identity(self, rectangle_quad):
        q = rectangle_quad
        for _ in range(4):
            q = conjugate_quad(q)
        assert q.marked == rectangle_quad.marked

    def test_reciprocal_rectangle(self, rectangle_quad):
        r = quad_modulus(conjugate_quad(rectangle_quad), tol=1e-3)
        assert r.value == pytest.approx(0.5, abs=1e-3)

    def test_product_at_least_one(self, rectangle_quad):
        rp = quad_modulus(rectangle_quad, tol=1e-3)
        rc = quad_modulus(conjugate_quad(rectangle_quad), tol=1e-3)
        assert rp.upper * rc.upper >= 1.0


class TestQuadModulus:
    def test_rectangle_h2(self, rectangle_quad):
        r = quad_modulus(rectangle_quad)
        assert r.converged
        assert r.value == pytest.approx(2.0, rel=1e-6)
        assert r.lower <= 2.0 <= r.upper
        assert r.upper - r.lower <= 1e-3

    def test_unit_square(self, unit_square_quad):
        r = quad_modulus(unit_square_quad)
        assert r.value == pytest.approx(1.0, rel=1e-6)

    def test_bracket_ordering(self, rectangle_quad):
        r = quad_modulus(rectangle_quad, tol=1e-3)
        assert r.lower <= r.value <= r.upper
        assert r.value == pytest.approx(0.5 * (r.lower + r.upper), rel=1e-15)

    def test_trapezoid_vs_bowman(self):
        q = quad_from_points(1 + 3j, 2j, 0j, 1 + 0j)
        r = quad_modulus(q, tol=5e-4, max_dofs=60_000)
        ref = bowman_modulus(3.0)
        assert abs(r.value - ref) <= 2e-3
        assert r.lower - 1e-12 <= ref <= r.upper + 1e-12

    def test_bracket_contains_reference_at_every_level(self):
        q = quad_from_points(1 + 2j, 1j, 0j, 1 + 0j)
        r = quad_modulus(q, tol=1e-3)
        ref = bowman_modulus(2.0)
        for ep, ec in zip(r.energy_history, r.conjugate_energy_history):
            assert ep >= ref - 1e-12
            assert 1.0 / ec <= ref + 1e-12

    def test_energy_history_nonincreasing(self):
        q = quad_from_points((0, 0), (2, 1), (4, 0), (2, 3))
        r = quad_modulus(q, tol=1e-3)
        hist = r.energy_history
        assert all(b <= a + 1e-12 for a, b in zip(hist, hist[1:]))
        conj = r.conjugate_energy_history
        assert all(b <= a + 1e-12 for a, b in zip(conj, conj[1:]))

    def test_budget_exhaustion_flagged(self):
        q = quad_from_points((0, 0), (2, 1), (4, 0), (2, 3))
        r = quad_modulus(q, tol=1e-12, max_dofs=600)
        assert not r.converged
        assert r.lower <= r.value <= r.upper
        assert r.dofs >= 600

    def test_label_rotation_by_two_overlaps(self, rectangle_quad):
        twice = conjugate_quad(conjugate_quad(rectangle_quad))
        r1 = quad_modulus(rectangle_quad, tol=1e-3)
        r2 = quad_modulus(twice, tol=1e-3)
        assert r1.lower <= r2.upper and r2.lower <= r1.upper

    def test_similarity_invariance(self, rectangle_quad):
        r1 = quad_modulus(rectangle_quad, tol=1e-3)
        moved = Quadrilateral(
            similarity(rectangle_quad.domain, 3.0, math.pi / 3, (5, -2)),
            rectangle_quad.marked,
        )
        r2 = quad_modulus(moved, tol=1e-3)
        assert r1.lower <= r2.upper and r2.lower <= r1.upper

    def test_invalid_tol(self, rectangle_quad):
        with pytest.raises(ValueError):
            quad_modulus(rectangle_quad, tol=0.0)

    def test_json_fields(self, rectangle_quad):
        r = quad_modulus(rectangle_quad, tol=1e-3)
        j = r.to_json()
        assert set(j) == {"value", "lower", "upper", "dofs", "levels", "converged"}

    def test_keep_solution(self, rectangle_quad):
        r = quad_modulus(rectangle_quad, tol=1e-3, keep_solution=True)
        assert r.mesh is not None
        assert r.solution is not None
        assert len(r.solution.nodal_values) == r.mesh.n_nodes


class TestRingCapacity:
    def test_separation_monotonicity(self):
        caps = []
        inner = validate_polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])
        for k in (2, 3, 4):
            outer = validate_polygon([(-k, -k), (k, -k), (k, k), (-k, k)])
            res = ring_capacity(RingCondenser(outer, inner), tol=1e-3)
            caps.append(res.capacity)
        assert caps[0] > caps[1] > caps[2]

    def test_annulus_96gon(self):
        ring = RingCondenser(regular_polygon(96, 2.0), regular_polygon(96, 1.0))
        res = ring_capacity(ring, tol=2e-4)
        assert res.converged
        assert res.modulus == pytest.approx(math.log(2.0), rel=0.02)
        assert res.modulus == pytest.approx(2.0 * math.pi / res.capacity, rel=1e-14)

    def test_scaling_invariance(self, square_ring):
        r1 = ring_capacity(square_ring, tol=1e-3)
        scaled = RingCondenser(
            similarity(square_ring.outer, 3.0, 0.0, (0, 0)),
            similarity(square_ring.inner, 3.0, 0.0, (0, 0)),
        )
        r2 = ring_capacity(scaled, tol=1e-3)
        assert r1.capacity == pytest.approx(r2.capacity, rel=5e-3)

    def test_energy_history_nonincreasing(self, square_ring):
        res = ring_capacity(square_ring, tol=1e-3)
        hist = res.energy_history
        assert all(b <= a + 1e-12 for a, b in zip(hist, hist[1:]))

    def test_json_fields(self, square_ring):
        res = ring_capacity(square_ring, tol=1e-2)
        assert set(res.to_json()) == {"capacity", "modulus", "dofs", "levels", "converged"}
