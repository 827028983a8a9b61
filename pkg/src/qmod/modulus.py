"""Adaptive computation of quadrilateral moduli and ring capacities.

For a quadrilateral the loop runs two problems side by side: the primal
one and its conjugate (marked points rotated by one), whose true moduli
are h and 1/h. Both discrete energies are conforming upper bounds, so

    1 / E_conjugate  <=  h  <=  E_primal

is a rigorous bracket at every level; the reported value is its midpoint.
Rings have no conjugate problem (no insulated arcs), so convergence is
declared from the decrement between successive nested-refinement energies
instead, which is a weaker certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np

from qmod.config import INITIAL_AREA_DIVISOR
from qmod.fem import BoundaryConditions, PotentialSolution, assemble_and_solve, element_error_indicators, quad_bc, ring_bc
from qmod.geometry import Quadrilateral, RingCondenser, polygon_area
from qmod.meshing import Mesh, doerfler_marking, refine, triangulate


@dataclass(frozen=True)
class ModulusResult:
    """Bracketed modulus: value is the midpoint of [lower, upper]."""

    value: float
    lower: float
    upper: float
    dofs: int
    levels: int
    energy_history: tuple[float, ...]
    conjugate_energy_history: tuple[float, ...]
    converged: bool
    mesh: Mesh | None = None
    solution: PotentialSolution | None = None

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "dofs": self.dofs,
            "levels": self.levels,
            "converged": self.converged,
        }

    @property
    def bracket_width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class CapacityResult:
    """Ring capacity with its conformal modulus 2 pi / capacity."""

    capacity: float
    modulus: float
    dofs: int
    levels: int
    energy_history: tuple[float, ...]
    converged: bool
    mesh: Mesh | None = None
    solution: PotentialSolution | None = None

    def to_json(self) -> dict:
        return {
            "capacity": self.capacity,
            "modulus": self.modulus,
            "dofs": self.dofs,
            "levels": self.levels,
            "converged": self.converged,
        }


def conjugate_quad(q: Quadrilateral) -> Quadrilateral:
    """Same polygon with the marked points rotated one step: modulus 1/h."""
    m = q.marked
    return Quadrilateral(q.domain, (m[1], m[2], m[3], m[0]))


def _prolong(values: np.ndarray, refined: Mesh) -> np.ndarray:
    """Carry a nodal vector to a refined mesh by edge-midpoint interpolation."""
    x = np.empty(refined.n_nodes)
    x[: values.size] = values
    for mid, a, b in refined.new_nodes or ():
        x[mid] = 0.5 * (x[a] + x[b])
    return x


class _AdaptiveProblem:
    """One solve-estimate-mark-refine sequence on a fixed domain."""

    def __init__(self, domain, bc: BoundaryConditions, initial_area: float):
        self.bc = bc
        self.mesh = triangulate(domain, initial_area)
        self.sol = assemble_and_solve(self.mesh, bc)

    @property
    def n_nodes(self) -> int:
        return self.mesh.n_nodes

    @property
    def energy(self) -> float:
        return self.sol.energy

    def step(self) -> None:
        marking = element_error_indicators(self.mesh, self.sol)
        if not marking.marked:
            # exact-in-space solution: refine uniformly to keep making progress
            marking = doerfler_marking(np.ones(self.mesh.n_triangles), theta=1.0)
        new_mesh = refine(self.mesh, marking)
        x0 = _prolong(self.sol.nodal_values, new_mesh)
        self.mesh = new_mesh
        self.sol = assemble_and_solve(new_mesh, self.bc, x0=x0)


def quad_modulus(
    q: Quadrilateral,
    tol: float = 1e-4,
    max_dofs: int = 200_000,
    keep_solution: bool = False,
) -> ModulusResult:
    """Bracketed modulus of a quadrilateral by the twin adaptive loop.

    Stops when upper - lower <= tol * value, or returns converged=False with
    the bracket reached once either mesh hits the max_dofs node budget.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    initial_area = polygon_area(q.domain) / INITIAL_AREA_DIVISOR
    primal = _AdaptiveProblem(q, quad_bc(), initial_area)
    conj = _AdaptiveProblem(conjugate_quad(q), quad_bc(), initial_area)
    hist_p = [primal.energy]
    hist_c = [conj.energy]
    levels = 0
    converged = False
    # The energies bound the modulus in exact arithmetic; pad the reported
    # bracket for the roundoff of the energy sums so exactly-representable
    # cases (rectangles) still land inside it.
    pad = 1e-12
    while True:
        upper = hist_p[-1] * (1.0 + pad)
        lower = min((1.0 / hist_c[-1]) * (1.0 - pad), upper)
        value = 0.5 * (upper + lower)
        if upper - lower <= tol * value:
            converged = True
            break
        if max(primal.n_nodes, conj.n_nodes) >= max_dofs:
            break
        primal.step()
        conj.step()
        hist_p.append(primal.energy)
        hist_c.append(conj.energy)
        levels += 1
    return ModulusResult(
        value=value,
        lower=lower,
        upper=upper,
        dofs=max(primal.n_nodes, conj.n_nodes),
        levels=levels,
        energy_history=tuple(hist_p),
        conjugate_energy_history=tuple(hist_c),
        converged=converged,
        mesh=primal.mesh if keep_solution else None,
        solution=primal.sol if keep_solution else None,
    )


def ring_capacity(
    ring: RingCondenser,
    tol: float = 1e-4,
    max_dofs: int = 200_000,
    keep_solution: bool = False,
) -> CapacityResult:
    """Capacity of a ring condenser and its modulus 2 pi / capacity.

    Converges when the energy decrement between successive refinement
    levels drops below tol * capacity.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    area = polygon_area(ring.outer) - polygon_area(ring.inner)
    prob = _AdaptiveProblem(ring, ring_bc(), area / INITIAL_AREA_DIVISOR)
    hist = [prob.energy]
    levels = 0
    converged = False
    while True:
        if levels >= 1 and hist[-2] - hist[-1] <= tol * hist[-1]:
            converged = True
            break
        if prob.n_nodes >= max_dofs:
            break
        prob.step()
        hist.append(prob.energy)
        levels += 1
    capacity = hist[-1]
    return CapacityResult(
        capacity=capacity,
        modulus=2.0 * pi / capacity,
        dofs=prob.n_nodes,
        levels=levels,
        energy_history=tuple(hist),
        converged=converged,
        mesh=prob.mesh if keep_solution else None,
        solution=prob.sol if keep_solution else None,
    )
