"""Command-line front door: single solves, special functions, sweeps, serving.

Points are given in marked order z1 z2 z3 z4 and this ordering changes the
answer: the modulus is computed with u=0 on the arc z2->z3 and u=1 on the
arc z4->z1. For a 1 x h rectangle entered as "1,h 0,h 0,0 1,0" the result
is h.

Exit codes: 0 success, 1 invalid input, 2 budget exhausted (the printed
result still carries the bracket reached).

Diagnostics go to stderr; stdout carries only the result payload. Set
QM_LOG={error|info|debug} to control verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass

from qmod.config import DEFAULT_SOLVE, SWEEP_SOLVE
from qmod.geometry import (
    GeometryError,
    Point,
    RingCondenser,
    polygon_from_json,
    quad_from_json,
    quad_from_points,
)
from qmod.meshing import MeshError, mesh_to_json
from qmod.fem import SolverError
from qmod.experiments import EXPERIMENTS, SweepGrid, run_sweep, write_csv
from qmod.modulus import quad_modulus, ring_capacity
from qmod import elliptic

log = logging.getLogger("qm")

_SPECFUN = {
    "K": elliptic.ellip_k,
    "mu": elliptic.mu,
    "muinv": elliptic.mu_inv,
    "M": elliptic.bowman_modulus,
    "Masym": elliptic.asymptotic_modulus,
}

_DEFAULT_GRIDS = {
    "trans": "0.05:1.95:20,0.05:1.95:20",
    "dupl": "0.05:1.95:20,0.05:1.95:20",
    "area": "0.05:1.95:20,0.05:1.95:20",
    "sum": "1.25:4:12,1.25:4:12",
}


@dataclass(frozen=True)
class CliConfig:
    """Validated invocation: one subcommand plus its solve budget."""

    subcommand: str
    tol: float
    max_dofs: int
    output: str | None
    fmt: str

    def __post_init__(self):
        if not self.tol > 0.0:
            raise ValueError(f"--tol must be positive, got {self.tol}")
        if self.max_dofs < 1000:
            raise ValueError(f"--max-dofs must be at least 1000, got {self.max_dofs}")
        if self.fmt not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.fmt!r}")


def _parse_points(text: str) -> list[Point]:
    pts = []
    for token in text.split():
        xy = token.split(",")
        if len(xy) != 2:
            raise ValueError(f"bad point {token!r}; expected x,y")
        pts.append(Point(float(xy[0]), float(xy[1])))
    return pts


def _parse_grid(text: str, alpha: float | None, beta: float | None) -> SweepGrid:
    try:
        xpart, ypart = text.split(",")
        x_min, x_max, nx = xpart.split(":")
        y_min, y_max, ny = ypart.split(":")
        return SweepGrid(
            x_min=float(x_min), x_max=float(x_max), nx=int(nx),
            y_min=float(y_min), y_max=float(y_max), ny=int(ny),
            alpha=alpha, beta=beta,
        )
    except ValueError as err:
        raise ValueError(f"bad --grid {text!r}; expected xmin:xmax:nx,ymin:ymax:ny") from err


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    print(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qm", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="subcommand", required=True)

    q = sub.add_parser("quad", help="modulus of a quadrilateral")
    src = q.add_mutually_exclusive_group(required=True)
    src.add_argument("--points", help="four points 'x1,y1 x2,y2 x3,y3 x4,y4' in marked order")
    src.add_argument("--file", help="quadrilateral JSON file {vertices, marked}")
    q.add_argument("--tol", type=float, default=DEFAULT_SOLVE.tol)
    q.add_argument("--max-dofs", type=int, default=DEFAULT_SOLVE.max_dofs)
    q.add_argument("--output", help="also write the result JSON to this file")
    q.add_argument("--mesh-json", help="write the final mesh and nodal potential to this file")
    q.add_argument("--dump-system", help="write the final stiffness system in Matrix Market form")

    r = sub.add_parser("ring", help="capacity and modulus of a ring condenser")
    r.add_argument("--outer", required=True, help="outer polygon JSON file")
    r.add_argument("--inner", required=True, help="inner polygon JSON file")
    r.add_argument("--tol", type=float, default=DEFAULT_SOLVE.tol)
    r.add_argument("--max-dofs", type=int, default=DEFAULT_SOLVE.max_dofs)
    r.add_argument("--output", help="also write the result JSON to this file")

    s = sub.add_parser("sweep", help="run a conjecture experiment over a parameter grid")
    s.add_argument("--experiment", required=True, choices=EXPERIMENTS)
    s.add_argument("--grid", help="xmin:xmax:nx,ymin:ymax:ny (defaults per experiment)")
    s.add_argument("--alpha", type=float, help="slant angle where the experiment uses one")
    s.add_argument("--beta", type=float, help="second slant angle")
    s.add_argument("--tol", type=float, default=SWEEP_SOLVE.tol)
    s.add_argument("--max-dofs", type=int, default=SWEEP_SOLVE.max_dofs)
    s.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="parallel grid evaluations")
    s.add_argument("--output", help="CSV path (default sweep_<experiment>.csv)")

    f = sub.add_parser("specfun", help="evaluate a reference special function")
    f.add_argument("--fn", required=True, choices=sorted(_SPECFUN))
    f.add_argument("--arg", required=True, type=float)

    v = sub.add_parser("serve", help="start the HTTP API")
    v.add_argument("--addr", default="127.0.0.1:8000", help="host:port to listen on")
    return p


def cmd_quad(args) -> int:
    if args.points:
        pts = _parse_points(args.points)
        if len(pts) != 4:
            raise GeometryError("bad-input", f"--points needs exactly 4 points, got {len(pts)}")
        quad = quad_from_points(*pts)
    else:
        quad = quad_from_json(_load_json(args.file))
    keep = bool(args.mesh_json or args.dump_system)
    result = quad_modulus(quad, tol=args.tol, max_dofs=args.max_dofs, keep_solution=keep)
    if args.mesh_json:
        payload = mesh_to_json(result.mesh)
        payload["values"] = [float(v) for v in result.solution.nodal_values]
        with open(args.mesh_json, "w") as fh:
            json.dump(payload, fh)
    if args.dump_system:
        from qmod.fem import dump_system, quad_bc

        dump_system(result.mesh, quad_bc(), args.dump_system)
    _emit(result.to_json(), args.output)
    return 0 if result.converged else 2


def cmd_ring(args) -> int:
    ring = RingCondenser(polygon_from_json(_load_json(args.outer)), polygon_from_json(_load_json(args.inner)))
    result = ring_capacity(ring, tol=args.tol, max_dofs=args.max_dofs)
    _emit(result.to_json(), args.output)
    return 0 if result.converged else 2


def cmd_sweep(args) -> int:
    grid = _parse_grid(args.grid or _DEFAULT_GRIDS[args.experiment], args.alpha, args.beta)
    jobs = max(1, args.jobs)
    result = run_sweep(args.experiment, grid, tol=args.tol, max_dofs=args.max_dofs, jobs=jobs)
    out = args.output or f"sweep_{args.experiment}.csv"
    write_csv(result, out)
    summary = result.summary()
    summary["csv"] = out
    print(json.dumps(summary))
    return 0


def cmd_specfun(args) -> int:
    value = _SPECFUN[args.fn](args.arg)
    print(format(value, ".15g"))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from qmod.service import create_app

    host, _, port = args.addr.rpartition(":")
    uvicorn.run(create_app(), host=host or "127.0.0.1", port=int(port))
    return 0


def main(argv=None) -> int:
    level = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
        os.environ.get("QM_LOG", "error").lower(), logging.ERROR
    )
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        if args.subcommand in ("quad", "ring", "sweep"):
            CliConfig(
                subcommand=args.subcommand,
                tol=args.tol,
                max_dofs=args.max_dofs,
                output=getattr(args, "output", None),
                fmt="csv" if args.subcommand == "sweep" else "json",
            )
        handler = {
            "quad": cmd_quad,
            "ring": cmd_ring,
            "sweep": cmd_sweep,
            "specfun": cmd_specfun,
            "serve": cmd_serve,
        }[args.subcommand]
        return handler(args)
    except (GeometryError, MeshError, ValueError, OSError, json.JSONDecodeError) as err:
        log.debug("invalid input", exc_info=True)
        print(f"error: {err}", file=sys.stderr)
        return 1
    except SolverError as err:
        print(f"solver error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
