"""Conjecture experiments as reproducible parameter sweeps.

Three inequalities are explored numerically, each over a 2D parameter grid:

  trans  straightening slanted sides:  QM(a,b,0,1) <= QM(1+i|a-1|, i|b|, 0, 1)
  dupl   gluing across the segment [0,1]:
         QM(A,B,0,1) + QM(conj(1-B), conj(1-A), 0, 1) <= QM(A,B,1-A,1-B)
  area   equal-area symmetrization:
         QM(1+2r e^{i alpha}, 2s e^{i beta}, 0, 1) <= QM(t+ir, is, -is, t-ir)
  sum    the trapezoid-splitting identity h+k-1 >= M(h)+M(k) >= h+k-2,
         evaluated on the closed-form elliptic path (no FEM noise).

Every record carries the combined bracket width of the moduli involved.
A sign of delta smaller than that width is reported as indeterminate and a
negative delta is a candidate counterexample to flag, never an assertion
failure: these inequalities are open questions, not invariants.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable

from qmod.config import SWEEP_SOLVE
from qmod.elliptic import bowman_modulus
from qmod.geometry import (
    GeometryError,
    equal_area_t,
    example3_q1,
    example3_q2,
    polygon_area,
    quad_from_points,
)
from qmod.meshing import MeshError
from qmod.fem import SolverError
from qmod.modulus import ModulusResult, quad_modulus

EXPERIMENTS = ("trans", "dupl", "area", "sum")

_DEFAULT_ANGLES = {
    "trans": (math.pi / 8.0, 3.0 * math.pi / 4.0),
    "area": (math.pi / 4.0, 3.0 * math.pi / 4.0),
}

CSV_HEADER = ("x", "y", "lhs", "rhs", "delta", "bracket", "skipped")


@dataclass(frozen=True)
class SweepGrid:
    """Inclusive rectangular parameter grid, row-major in x then y."""

    x_min: float
    x_max: float
    nx: int
    y_min: float
    y_max: float
    ny: int
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError(f"grid needs nx, ny >= 2, got {self.nx}x{self.ny}")
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("grid bounds must satisfy min < max")

    def xs(self) -> list[float]:
        step = (self.x_max - self.x_min) / (self.nx - 1)
        return [self.x_min + i * step for i in range(self.nx)]

    def ys(self) -> list[float]:
        step = (self.y_max - self.y_min) / (self.ny - 1)
        return [self.y_min + j * step for j in range(self.ny)]

    def points(self) -> list[tuple[float, float]]:
        return [(x, y) for x in self.xs() for y in self.ys()]


@dataclass(frozen=True)
class SweepRecord:
    x: float
    y: float
    lhs: float
    rhs: float
    delta: float
    bracket: float
    skipped: bool

    @property
    def indeterminate(self) -> bool:
        return (not self.skipped) and abs(self.delta) <= self.bracket

    @property
    def confirmed_negative(self) -> bool:
        return (not self.skipped) and self.delta < -self.bracket


@dataclass(frozen=True)
class SweepResult:
    experiment: str
    records: tuple[SweepRecord, ...]

    def summary(self) -> dict:
        live = [r for r in self.records if not r.skipped]
        out = {
            "experiment": self.experiment,
            "records": len(self.records),
            "skipped": sum(r.skipped for r in self.records),
            "indeterminate": sum(r.indeterminate for r in self.records),
            "confirmed_negative": sum(r.confirmed_negative for r in self.records),
        }
        if live:
            worst = min(live, key=lambda r: r.delta)
            out["min_delta"] = worst.delta
            out["min_delta_at"] = [worst.x, worst.y]
        else:
            out["min_delta"] = None
            out["min_delta_at"] = None
        return out


@dataclass(frozen=True)
class ExperimentPoint:
    """One inequality evaluation: delta = rhs - lhs, bracket = summed widths."""

    lhs: float
    rhs: float
    delta: float
    bracket: float
    results: tuple[ModulusResult, ...]


def _combine(lhs_results: tuple[ModulusResult, ...], rhs_results: tuple[ModulusResult, ...]) -> ExperimentPoint:
    lhs = sum(r.value for r in lhs_results)
    rhs = sum(r.value for r in rhs_results)
    bracket = sum(r.bracket_width for r in lhs_results + rhs_results)
    return ExperimentPoint(lhs=lhs, rhs=rhs, delta=rhs - lhs, bracket=bracket, results=lhs_results + rhs_results)


def exp_transposition(a: complex, b: complex, tol: float = SWEEP_SOLVE.tol, max_dofs: int = SWEEP_SOLVE.max_dofs) -> ExperimentPoint:
    """Compare QM(a,b,0,1) against the upright QM(1+i|a-1|, i|b|, 0, 1).

    Requires Im a > 0, Im b > 0, arg b in [pi/2, pi) and arg(a-1) in
    (0, pi/2]; the interval ends at pi/2 are accepted since the upright
    configuration itself sits there.
    """
    a, b = complex(a), complex(b)
    if not (a.imag > 0.0 and b.imag > 0.0):
        raise GeometryError("bad-parameter", f"need Im a > 0 and Im b > 0, got a={a}, b={b}")
    arg_b = math.atan2(b.imag, b.real)
    arg_a1 = math.atan2(a.imag, a.real - 1.0)
    if not (math.pi / 2.0 <= arg_b < math.pi):
        raise GeometryError("bad-parameter", f"need arg b in [pi/2, pi), got {arg_b}")
    if not (0.0 < arg_a1 <= math.pi / 2.0):
        raise GeometryError("bad-parameter", f"need arg(a-1) in (0, pi/2], got {arg_a1}")
    slanted = quad_from_points(a, b, 0j, 1 + 0j)
    upright = quad_from_points(1 + 1j * abs(a - 1.0), 1j * abs(b), 0j, 1 + 0j)
    return _combine(
        (quad_modulus(slanted, tol, max_dofs),),
        (quad_modulus(upright, tol, max_dofs),),
    )


def exp_duplication(a: complex, b: complex, tol: float = SWEEP_SOLVE.tol, max_dofs: int = SWEEP_SOLVE.max_dofs) -> ExperimentPoint:
    """Glued-domain inequality: QM(A,B,0,1) + QM(conj(1-B), conj(1-A), 0, 1)
    against QM(A,B,1-A,1-B). Equality holds on the upright family A=1+ih,
    B=ih."""
    a, b = complex(a), complex(b)
    first = quad_from_points(a, b, 0j, 1 + 0j)
    second = quad_from_points((1.0 - b).conjugate(), (1.0 - a).conjugate(), 0j, 1 + 0j)
    glued = quad_from_points(a, b, 1.0 - a, 1.0 - b)
    return _combine(
        (quad_modulus(first, tol, max_dofs), quad_modulus(second, tol, max_dofs)),
        (quad_modulus(glued, tol, max_dofs),),
    )


def exp_equal_area(r: float, s: float, alpha: float, beta: float, tol: float = SWEEP_SOLVE.tol, max_dofs: int = SWEEP_SOLVE.max_dofs) -> ExperimentPoint:
    """Slanted quadrilateral against the equal-area symmetric trapezoid."""
    t = equal_area_t(r, s, alpha, beta)
    q1 = example3_q1(r, s, alpha, beta)
    q2 = example3_q2(t, r, s)
    mismatch = abs(polygon_area(q1.domain) - polygon_area(q2.domain))
    if mismatch > 1e-10 * polygon_area(q1.domain):
        raise GeometryError("bad-parameter", f"equal-area width failed: area mismatch {mismatch}")
    return _combine(
        (quad_modulus(q1, tol, max_dofs),),
        (quad_modulus(q2, tol, max_dofs),),
    )


@dataclass(frozen=True)
class SumInequalityPoint:
    """Slacks of h+k-1 >= M(h)+M(k) >= h+k-2; both are nonnegative."""

    h: float
    k: float
    modulus_sum: float
    slack_upper: float
    slack_lower: float


def exp_sum_inequality(h: float, k: float) -> SumInequalityPoint:
    if not (h > 1.0 and k > 1.0):
        raise ValueError(f"sum inequality needs h, k > 1, got h={h}, k={k}")
    msum = bowman_modulus(h) + bowman_modulus(k)
    return SumInequalityPoint(
        h=h,
        k=k,
        modulus_sum=msum,
        slack_upper=(h + k - 1.0) - msum,
        slack_lower=msum - (h + k - 2.0),
    )


def _skip(x: float, y: float) -> SweepRecord:
    nan = float("nan")
    return SweepRecord(x=x, y=y, lhs=nan, rhs=nan, delta=nan, bracket=nan, skipped=True)


def _eval_point(experiment: str, alpha: float | None, beta: float | None, tol: float, max_dofs: int, xy: tuple[float, float]) -> SweepRecord:
    x, y = xy
    try:
        if experiment == "trans":
            a = 1.0 + x * complex(math.cos(alpha), math.sin(alpha))
            b = y * complex(math.cos(beta), math.sin(beta))
            pt = exp_transposition(a, b, tol, max_dofs)
        elif experiment == "dupl":
            a = complex(x, y)
            phi = math.atan2(a.imag, a.real - 1.0)
            b = complex(math.cos(phi), math.sin(phi))
            pt = exp_duplication(a, b, tol, max_dofs)
        elif experiment == "area":
            pt = exp_equal_area(x, y, alpha, beta, tol, max_dofs)
        elif experiment == "sum":
            sp = exp_sum_inequality(x, y)
            return SweepRecord(
                x=x, y=y,
                lhs=sp.modulus_sum,
                rhs=x + y - 1.0,
                delta=sp.slack_upper,
                bracket=0.0,
                skipped=False,
            )
        else:
            raise ValueError(f"unknown experiment {experiment!r}")
        return SweepRecord(x=x, y=y, lhs=pt.lhs, rhs=pt.rhs, delta=pt.delta, bracket=pt.bracket, skipped=False)
    except (GeometryError, MeshError, SolverError) as err:
        return _skip(x, y)
    except ValueError:
        if experiment == "sum":
            return _skip(x, y)
        raise


def run_sweep(
    experiment: str,
    grid: SweepGrid,
    tol: float = SWEEP_SOLVE.tol,
    max_dofs: int = SWEEP_SOLVE.max_dofs,
    jobs: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> SweepResult:
    """Evaluate one experiment on the grid, row-major in x then y.

    Invalid geometries are flagged skipped rather than failing the sweep.
    With jobs > 1 the points run in a process pool; records are still
    aggregated in deterministic row-major order.
    """
    if experiment not in EXPERIMENTS:
        raise ValueError(f"unknown experiment {experiment!r}; pick one of {EXPERIMENTS}")
    alpha, beta = _DEFAULT_ANGLES.get(experiment, (None, None))
    if grid.alpha is not None:
        alpha = grid.alpha
    if grid.beta is not None:
        beta = grid.beta
    points = grid.points()
    fn = partial(_eval_point, experiment, alpha, beta, tol, max_dofs)
    records: list[SweepRecord] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(fn, xy) for xy in points]
            done = 0
            out: dict[int, SweepRecord] = {}
            for i, fut in enumerate(futures):
                out[i] = fut.result()
                done += 1
                if progress:
                    progress(done, len(points))
            records = [out[i] for i in range(len(points))]
    else:
        for i, xy in enumerate(points):
            records.append(fn(xy))
            if progress:
                progress(i + 1, len(points))
    return SweepResult(experiment=experiment, records=tuple(records))


def _fmt(v: float) -> str:
    return format(v, ".12g")


def write_csv(result: SweepResult, dest) -> None:
    """Serialize records with 12 significant digits; header row mandatory."""
    own = isinstance(dest, (str, bytes))
    fh = open(dest, "w", newline="") if own else dest
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in result.records:
            w.writerow([_fmt(r.x), _fmt(r.y), _fmt(r.lhs), _fmt(r.rhs), _fmt(r.delta), _fmt(r.bracket), int(r.skipped)])
    finally:
        if own:
            fh.close()


def csv_text(result: SweepResult) -> str:
    buf = io.StringIO()
    write_csv(result, buf)
    return buf.getvalue()
