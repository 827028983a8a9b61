"""P1 finite elements for the mixed Dirichlet-Neumann Laplace problem.

The stiffness matrix uses the exact closed-form element integrals for
linear elements on straight triangles, so there is no quadrature error.
Dirichlet rows are eliminated and the remaining SPD system is solved by
conjugate gradients with diagonal (Jacobi) preconditioning. Insulated
(zero-Neumann) arcs need no boundary term: the condition is natural.

The returned energy is evaluated from the nodal vector itself, which keeps
the bracket honest: any vector with the exact Dirichlet values has energy
at least the discrete minimum, which in turn is at least the true Dirichlet
energy, solver residual or not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from scipy import sparse

from qmod.meshing import Mesh, RefinementMarking, doerfler_marking

DEFAULT_REL_TOL = 1e-10


class SolverError(RuntimeError):
    """Linear-solver failure. ``code`` is a stable machine-readable slug."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class BoundaryConditions:
    """Constant Dirichlet values per tag plus insulated (zero-Neumann) tags."""

    dirichlet: Mapping[str, float]
    neumann: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "dirichlet", dict(self.dirichlet))
        object.__setattr__(self, "neumann", frozenset(self.neumann))
        overlap = set(self.dirichlet) & self.neumann
        if overlap:
            raise ValueError(f"tags cannot be both Dirichlet and Neumann: {sorted(overlap)}")

    def check_covers(self, mesh: Mesh) -> None:
        present = mesh.tags()
        missing = present - set(self.dirichlet) - self.neumann
        if missing:
            raise ValueError(f"mesh has boundary tags without conditions: {sorted(missing)}")


def quad_bc() -> BoundaryConditions:
    """u=0 on Gamma2, u=1 on Gamma4, insulated Gamma1 and Gamma3."""
    return BoundaryConditions({"Gamma2": 0.0, "Gamma4": 1.0}, frozenset({"Gamma1", "Gamma3"}))


def ring_bc() -> BoundaryConditions:
    """u=1 on the inner plate, u=0 on the outer plate."""
    return BoundaryConditions({"PlateE": 1.0, "PlateF": 0.0}, frozenset())


@dataclass(frozen=True)
class PotentialSolution:
    """Nodal potential, its Dirichlet energy, and the achieved solver residual."""

    nodal_values: np.ndarray
    energy: float
    residual: float


def assemble_stiffness(mesh: Mesh) -> sparse.csr_matrix:
    """Exactly symmetric P1 stiffness matrix of the Laplacian."""
    t = mesh.triangles
    p = mesh.nodes[t]
    x, y = p[:, :, 0], p[:, :, 1]
    b = np.stack([y[:, 1] - y[:, 2], y[:, 2] - y[:, 0], y[:, 0] - y[:, 1]], axis=1)
    c = np.stack([x[:, 2] - x[:, 1], x[:, 0] - x[:, 2], x[:, 1] - x[:, 0]], axis=1)
    coef = 1.0 / (4.0 * mesh.areas)
    kloc = (b[:, :, None] * b[:, None, :] + c[:, :, None] * c[:, None, :]) * coef[:, None, None]
    rows = np.repeat(t, 3, axis=1).ravel()
    cols = np.tile(t, (1, 3)).ravel()
    n = mesh.n_nodes
    a = sparse.coo_matrix((kloc.ravel(), (rows, cols)), shape=(n, n)).tocsr()
    # (a_ij + a_ji)/2 is bitwise symmetric; a already is up to summation order
    return ((a + a.T) * 0.5).tocsr()


def dirichlet_nodes(mesh: Mesh, bc: BoundaryConditions) -> tuple[np.ndarray, np.ndarray]:
    """Node indices with prescribed values. A node on two Dirichlet arcs with
    different values would be ill-posed and is rejected."""
    vals: dict[int, float] = {}
    for a, b, tag in mesh.boundary_edges:
        v = bc.dirichlet.get(tag)
        if v is None:
            continue
        for nid in (a, b):
            prev = vals.setdefault(nid, v)
            if prev != v:
                raise SolverError("conflicting-dirichlet", f"node {nid} has Dirichlet values {prev} and {v}")
    idx = np.fromiter(sorted(vals), dtype=np.int64, count=len(vals))
    return idx, np.array([vals[i] for i in idx], dtype=float)


def element_gradients(mesh: Mesh, values: np.ndarray) -> np.ndarray:
    """Piecewise-constant gradient of the P1 function on each triangle."""
    t = mesh.triangles
    p = mesh.nodes[t]
    x, y = p[:, :, 0], p[:, :, 1]
    u = values[t]
    b = np.stack([y[:, 1] - y[:, 2], y[:, 2] - y[:, 0], y[:, 0] - y[:, 1]], axis=1)
    c = np.stack([x[:, 2] - x[:, 1], x[:, 0] - x[:, 2], x[:, 1] - x[:, 0]], axis=1)
    inv2a = 1.0 / (2.0 * mesh.areas)
    gx = (u * b).sum(axis=1) * inv2a
    gy = (u * c).sum(axis=1) * inv2a
    return np.stack([gx, gy], axis=1)


def dirichlet_energy(mesh: Mesh, values: np.ndarray) -> float:
    """Sum over triangles of |grad u|^2 times area."""
    g = element_gradients(mesh, values)
    return float(((g * g).sum(axis=1) * mesh.areas).sum())


def _pcg(a: sparse.csr_matrix, b: np.ndarray, x0: np.ndarray, rel_tol: float, maxiter: int):
    """Jacobi-preconditioned conjugate gradients to ||r|| <= rel_tol ||b||."""
    bnorm = float(np.linalg.norm(b))
    if bnorm == 0.0:
        return np.zeros_like(b), 0.0, 0
    dinv = 1.0 / a.diagonal()
    x = x0.astype(float).copy()
    r = b - a @ x
    z = dinv * r
    p = z.copy()
    rz = float(r @ z)
    for it in range(maxiter + 1):
        rnorm = float(np.linalg.norm(r))
        if rnorm <= rel_tol * bnorm:
            return x, rnorm / bnorm, it
        if it == maxiter:
            break
        ap = a @ p
        pap = float(p @ ap)
        if pap <= 0.0:
            raise SolverError("no-convergence", "conjugate gradient breakdown (matrix not SPD?)")
        alpha = rz / pap
        x += alpha * p
        r -= alpha * ap
        z = dinv * r
        rz_new = float(r @ z)
        p = z + (rz_new / rz) * p
        rz = rz_new
    raise SolverError("no-convergence", f"conjugate gradients: no convergence in {maxiter} iterations")


def assemble_and_solve(
    mesh: Mesh,
    bc: BoundaryConditions,
    rel_tol: float = DEFAULT_REL_TOL,
    x0: np.ndarray | None = None,
) -> PotentialSolution:
    """Solve the discrete mixed problem on the mesh.

    ``x0`` optionally warm-starts the iteration (e.g. the previous adaptive
    level's solution carried to this mesh); Dirichlet entries are always
    overwritten with their exact values.
    """
    if not 0.0 < rel_tol < 1.0:
        raise ValueError(f"rel_tol must be in (0,1), got {rel_tol}")
    bc.check_covers(mesh)
    a = assemble_stiffness(mesh)
    didx, dval = dirichlet_nodes(mesh, bc)
    if didx.size == 0:
        raise SolverError("singular-system", "no Dirichlet boundary: the potential is pinned nowhere")
    n = mesh.n_nodes
    x = np.zeros(n)
    x[didx] = dval
    free = np.ones(n, dtype=bool)
    free[didx] = False
    fidx = np.flatnonzero(free)
    residual = 0.0
    if fidx.size:
        aff = a[fidx][:, fidx].tocsr()
        rhs = -(a[fidx][:, didx] @ dval)
        start = x0[fidx] if x0 is not None else np.zeros(fidx.size)
        cap = int(math.ceil(20.0 * math.sqrt(fidx.size))) + 10
        xf, residual, _ = _pcg(aff, rhs, start, rel_tol, cap)
        x[fidx] = xf
    return PotentialSolution(nodal_values=x, energy=dirichlet_energy(mesh, x), residual=residual)


def edge_adjacency(triangles: np.ndarray):
    """Unique undirected edges with their one or two owning triangles.

    Returns (edges (E,2), t1 (E,), t2 (E,)); t2 is -1 on boundary edges.
    """
    ntri = triangles.shape[0]
    e = np.concatenate([triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]])
    owner = np.concatenate([np.arange(ntri)] * 3)
    e.sort(axis=1)
    uniq, inv, counts = np.unique(e, axis=0, return_inverse=True, return_counts=True)
    order = np.argsort(inv, kind="stable")
    sorted_owner = owner[order]
    starts = np.searchsorted(inv[order], np.arange(uniq.shape[0]))
    t1 = sorted_owner[starts]
    t2 = np.full(uniq.shape[0], -1, dtype=np.int64)
    two = counts == 2
    t2[two] = sorted_owner[starts[two] + 1]
    return uniq, t1, t2


def element_error_indicators(mesh: Mesh, sol: PotentialSolution) -> RefinementMarking:
    """Gradient-jump error indicators with Doerfler marking.

    Each interior edge contributes h_e^2 [grad u . n]^2, split evenly
    between its two triangles; the indicator is the square root of the
    accumulated triangle mass.
    """
    grads = element_gradients(mesh, sol.nodal_values)
    edges, t1, t2 = edge_adjacency(mesh.triangles)
    interior = t2 >= 0
    ea, eb = edges[interior, 0], edges[interior, 1]
    dvec = mesh.nodes[eb] - mesh.nodes[ea]
    lengths2 = (dvec * dvec).sum(axis=1)
    normal = np.stack([dvec[:, 1], -dvec[:, 0]], axis=1) / np.sqrt(lengths2)[:, None]
    jump = ((grads[t1[interior]] - grads[t2[interior]]) * normal).sum(axis=1)
    w = lengths2 * jump * jump
    eta2 = np.zeros(mesh.n_triangles)
    np.add.at(eta2, t1[interior], 0.5 * w)
    np.add.at(eta2, t2[interior], 0.5 * w)
    return doerfler_marking(np.sqrt(eta2))


def dump_system(mesh: Mesh, bc: BoundaryConditions, path: str) -> None:
    """Write the reduced SPD system in Matrix Market form: <path> gets the
    matrix, <path>.rhs the right-hand side."""
    from scipy.io import mmwrite

    a = assemble_stiffness(mesh)
    didx, dval = dirichlet_nodes(mesh, bc)
    free = np.ones(mesh.n_nodes, dtype=bool)
    free[didx] = False
    fidx = np.flatnonzero(free)
    aff = a[fidx][:, fidx].tocsr()
    rhs = -(a[fidx][:, didx] @ dval)
    with open(path, "wb") as fh:
        mmwrite(fh, aff)
    with open(f"{path}.rhs", "wb") as fh:
        mmwrite(fh, rhs.reshape(-1, 1))
