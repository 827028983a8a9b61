"""Acceptance suite: each test is one release criterion at its stated
tolerance. The conftest hook prints one PASS/FAIL line per criterion."""

import json
import math
import time
import warnings

import numpy as np
import pytest

from qmod.elliptic import asymptotic_modulus, bowman_modulus
from qmod.geometry import (
    Quadrilateral,
    RingCondenser,
    quad_from_points,
    regular_polygon,
    similarity,
)
from qmod.meshing import triangulate, refine, doerfler_marking
from qmod.fem import assemble_and_solve, assemble_stiffness, element_error_indicators, quad_bc, ring_bc
from qmod.modulus import conjugate_quad, quad_modulus, ring_capacity
from qmod.experiments import SweepGrid, csv_text, exp_duplication, run_sweep
from qmod.cli import main as cli_main


def rect(h: float) -> Quadrilateral:
    return quad_from_points(complex(1, h), complex(0, h), 0j, 1 + 0j)


def trapezoid(h: float) -> Quadrilateral:
    return quad_from_points(complex(1, h), complex(0, h - 1), 0j, 1 + 0j)


FIVE_QUADS = {
    "rectangle": rect(2.0),
    "square": rect(1.0),
    "trapezoid_h2": trapezoid(2.0),
    "trapezoid_h3": trapezoid(3.0),
    "nonconvex": quad_from_points((0, 0), (2, 1), (4, 0), (2, 3)),
}


def test_rectangle_exactness():
    for h in (0.5, 1.0, 2.0, 5.0):
        start = time.monotonic()
        res = quad_modulus(rect(h), tol=1e-4, max_dofs=200_000)
        elapsed = time.monotonic() - start
        assert elapsed <= 60.0, f"h={h} took {elapsed:.1f}s"
        assert abs(res.value - h) <= 1e-3 * h
        assert res.lower <= h <= res.upper


def test_reciprocity_bracket():
    for name, quad in FIVE_QUADS.items():
        res = quad_modulus(quad, tol=1e-3, max_dofs=200_000)
        products = [
            ep * ec
            for ep, ec in zip(res.energy_history, res.conjugate_energy_history)
        ]
        final = products[-1]
        # lower bound holds in exact arithmetic; allow energy-sum roundoff
        assert 1.0 - 1e-12 <= final <= 1.002, f"{name}: product {final}"
        # conforming energies decrease level by level, so the product
        # shrinks toward 1 under refinement
        assert all(b <= a + 1e-12 for a, b in zip(products, products[1:])), name
        assert products[0] + 1e-12 >= final, name


def test_bowman_cross_validation():
    for h in (1.5, 2.0, 3.0):
        res = quad_modulus(trapezoid(h), tol=2e-4, max_dofs=200_000)
        ref = bowman_modulus(h)
        assert abs(res.value - ref) <= 2e-3, f"h={h}: {res.value} vs {ref}"


def test_bounds_and_asymptotics():
    h = 1.5
    while h <= 5.0 + 1e-9:
        m = bowman_modulus(h)
        assert h - 1.0 <= m <= h
        h += 0.5
    diffs = [abs(bowman_modulus(h) - asymptotic_modulus(h)) for h in (2.0, 3.0, 4.0, 5.0)]
    assert all(a > b for a, b in zip(diffs, diffs[1:]))
    assert diffs[2] <= 1e-3  # h = 4


def test_remark2_inequality():
    start = time.monotonic()
    values = {}
    grid = [1.25 + 0.25 * i for i in range(12)]
    for h in grid:
        values[h] = bowman_modulus(h)
    for h in grid:
        for k in grid:
            s = values[h] + values[k]
            assert (h + k - 1.0) - s >= 0.0
            assert s - (h + k - 2.0) >= 0.0
    assert time.monotonic() - start < 1.0


def test_duplication_equality():
    for h in (0.5, 1.0, 2.0):
        pt = exp_duplication(complex(1, h), complex(0, h), tol=1e-3, max_dofs=50_000)
        assert abs(pt.delta) <= max(pt.bracket, 1e-12), f"h={h}"
        assert abs(pt.delta) <= 5e-3


def test_square_cases():
    res = quad_modulus(rect(1.0), tol=1e-4, max_dofs=200_000)
    assert abs(res.value - 1.0) <= 1e-3
    a = complex(1.3, 0.4)
    b = 0.5 + 1j * (a - 0.5)
    tilted = quad_from_points(a, b, 1.0 - a, 1.0 - b)
    res = quad_modulus(tilted, tol=1e-4, max_dofs=200_000)
    assert abs(res.value - 1.0) <= 1e-3


def test_ring_annulus():
    start = time.monotonic()
    ring = RingCondenser(regular_polygon(96, 2.0), regular_polygon(96, 1.0))
    res = ring_capacity(ring, tol=2e-4, max_dofs=200_000)
    elapsed = time.monotonic() - start
    assert elapsed <= 120.0, f"ring took {elapsed:.1f}s"
    assert abs(res.modulus - math.log(2.0)) <= 0.02 * math.log(2.0)


def test_conjecture_sweeps(tmp_path, capsys):
    """Figures' sweep configurations on 20x20 grids via the CLI: complete,
    deterministic, and no confirmed counterexample. A negative-signed record
    is flagged for review, not a suite failure."""
    start = time.monotonic()
    configs = {
        "trans": ["--alpha", str(math.pi / 8), "--beta", str(3 * math.pi / 4)],
        "dupl": [],
        "area": ["--alpha", str(math.pi / 4), "--beta", str(3 * math.pi / 4)],
    }
    summaries = {}
    for experiment, extra in configs.items():
        out = tmp_path / f"{experiment}.csv"
        code = cli_main(
            ["sweep", "--experiment", experiment, "--grid", "0.05:1.95:20,0.05:1.95:20",
             "--jobs", "2", "--output", str(out)] + extra
        )
        stdout = capsys.readouterr().out
        assert code == 0
        summary = json.loads(stdout)
        summaries[experiment] = summary
        assert summary["records"] == 400
        lines = out.read_text().strip().split("\n")
        assert len(lines) == 401
        if summary["confirmed_negative"] > 0:
            warnings.warn(
                f"{experiment}: {summary['confirmed_negative']} record(s) with "
                f"delta < -bracket; flag for manual review (min delta "
                f"{summary['min_delta']} at {summary['min_delta_at']})"
            )
    # determinism: a sub-grid run twice is bit-identical per experiment
    for experiment in configs:
        g = SweepGrid(0.35, 1.65, 3, 0.35, 1.65, 3)
        first = csv_text(run_sweep(experiment, g, tol=2.5e-3, max_dofs=12_000))
        second = csv_text(run_sweep(experiment, g, tol=2.5e-3, max_dofs=12_000))
        assert first == second, experiment
    total = time.monotonic() - start
    assert total <= 1800.0, f"sweeps took {total:.0f}s"
    assert all(s["confirmed_negative"] == 0 for s in summaries.values()), summaries


def test_solver_property_suite():
    # exact symmetry of the assembled matrix
    mesh = triangulate(FIVE_QUADS["trapezoid_h2"], 0.05)
    a = assemble_stiffness(mesh)
    assert abs(a - a.T).max() == 0.0

    # nested refinement: energy never increases by more than 1e-12
    mesh = triangulate(FIVE_QUADS["nonconvex"], 0.3)
    sol = assemble_and_solve(mesh, quad_bc())
    energies = [sol.energy]
    for _ in range(5):
        marking = element_error_indicators(mesh, sol)
        if not marking.marked:
            marking = doerfler_marking(np.ones(mesh.n_triangles), theta=1.0)
        mesh = refine(mesh, marking)
        sol = assemble_and_solve(mesh, quad_bc())
        energies.append(sol.energy)
    assert all(b <= a + 1e-12 for a, b in zip(energies, energies[1:]))

    # discrete maximum principle on generator-produced meshes
    for quad in FIVE_QUADS.values():
        m = triangulate(quad, 0.1)
        s = assemble_and_solve(m, quad_bc())
        assert s.nodal_values.min() >= -1e-8
        assert s.nodal_values.max() <= 1.0 + 1e-8
    ring = RingCondenser(regular_polygon(16, 2.0), regular_polygon(12, 0.7))
    m = triangulate(ring, 0.2)
    s = assemble_and_solve(m, ring_bc())
    assert s.nodal_values.min() >= -1e-8
    assert s.nodal_values.max() <= 1.0 + 1e-8

    # similarity invariance: brackets overlap across scales and rotations
    base = FIVE_QUADS["trapezoid_h2"]
    ref = quad_modulus(base, tol=1e-3, max_dofs=100_000)
    for scale in (0.5, 3.0):
        for rot in (0.0, math.pi / 3.0):
            moved = Quadrilateral(similarity(base.domain, scale, rot, (1, -1)), base.marked)
            res = quad_modulus(moved, tol=1e-3, max_dofs=100_000)
            assert res.lower <= ref.upper and ref.lower <= res.upper, (scale, rot)
