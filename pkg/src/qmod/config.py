"""Shared solve budgets so the CLI, service, and sweeps stay consistent."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SolveConfig:
    """Relative bracket tolerance and degree-of-freedom budget for one solve."""

    tol: float = 1e-4
    max_dofs: int = 200_000

    def __post_init__(self):
        if not self.tol > 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_dofs < 4:
            raise ValueError(f"max_dofs too small: {self.max_dofs}")


DEFAULT_SOLVE = SolveConfig()

# Sweeps trade accuracy for grid throughput; widths are tracked per record,
# so looser brackets only grow the indeterminate set, never flip a sign.
SWEEP_SOLVE = SolveConfig(tol=2.5e-3, max_dofs=12_000)

# Interactive API budget: keep single solves at request latency.
API_SOLVE = SolveConfig(tol=1e-3, max_dofs=40_000)

# Triangles in the initial mesh scale with domain area / this divisor.
INITIAL_AREA_DIVISOR = 64.0
