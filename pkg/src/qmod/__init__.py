"""Conformal moduli of polygonal quadrilaterals and capacities of ring condensers.

The toolkit solves mixed Dirichlet-Neumann Laplace problems with adaptive
P1 finite elements, brackets each modulus between two conforming energies,
and cross-checks against closed-form elliptic-integral values.
"""

from qmod.geometry import (
    Point,
    Polygon,
    Quadrilateral,
    RingCondenser,
    GeometryError,
    validate_polygon,
    polygon_area,
    quad_from_points,
    similarity,
    equal_area_t,
)
from qmod.elliptic import ellip_k, mu, mu_inv, bowman_modulus, asymptotic_modulus
from qmod.meshing import Mesh, RefinementMarking, MeshError, triangulate, refine
from qmod.fem import BoundaryConditions, PotentialSolution, SolverError, assemble_and_solve, element_error_indicators
from qmod.modulus import ModulusResult, CapacityResult, quad_modulus, conjugate_quad, ring_capacity

__all__ = [
    "Point",
    "Polygon",
    "Quadrilateral",
    "RingCondenser",
    "GeometryError",
    "validate_polygon",
    "polygon_area",
    "quad_from_points",
    "similarity",
    "equal_area_t",
    "ellip_k",
    "mu",
    "mu_inv",
    "bowman_modulus",
    "asymptotic_modulus",
    "Mesh",
    "RefinementMarking",
    "MeshError",
    "triangulate",
    "refine",
    "BoundaryConditions",
    "PotentialSolution",
    "SolverError",
    "assemble_and_solve",
    "element_error_indicators",
    "ModulusResult",
    "CapacityResult",
    "quad_modulus",
    "conjugate_quad",
    "ring_capacity",
]

__version__ = "0.1.0"
