#!/usr/bin/env python3
"""Reproduce the three inequality surfaces as CSV grids.

Writes sweep_trans.csv, sweep_dupl.csv, sweep_area.csv (plus the closed-form
sweep_sum.csv) into --out-dir and prints one summary line per sweep. Expect a
few minutes of runtime on two cores for the default 20x20 grids.
"""

import argparse
import json
import math
import os
import time

from qmod.experiments import SweepGrid, run_sweep, write_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default=".")
    ap.add_argument("--n", type=int, default=20, help="grid points per axis")
    ap.add_argument("--tol", type=float, default=2.5e-3)
    ap.add_argument("--max-dofs", type=int, default=12_000)
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    args = ap.parse_args()

    fem_grid = dict(x_min=0.05, x_max=1.95, nx=args.n, y_min=0.05, y_max=1.95, ny=args.n)
    configs = [
        ("trans", SweepGrid(**fem_grid, alpha=math.pi / 8, beta=3 * math.pi / 4)),
        ("dupl", SweepGrid(**fem_grid)),
        ("area", SweepGrid(**fem_grid, alpha=math.pi / 4, beta=3 * math.pi / 4)),
        ("sum", SweepGrid(x_min=1.25, x_max=4.0, nx=12, y_min=1.25, y_max=4.0, ny=12)),
    ]
    for experiment, grid in configs:
        start = time.monotonic()
        result = run_sweep(experiment, grid, tol=args.tol, max_dofs=args.max_dofs, jobs=args.jobs)
        path = os.path.join(args.out_dir, f"sweep_{experiment}.csv")
        write_csv(result, path)
        summary = result.summary()
        summary["seconds"] = round(time.monotonic() - start, 1)
        summary["csv"] = path
        print(json.dumps(summary))


if __name__ == "__main__":
    main()
