/** Sweep heatmap helpers: grid layout, diverging colors centered at zero,
 * indeterminate flagging, nearest-cell lookup for click-to-refine. */

import type { SweepRow } from "./types";

export interface HeatmapModel {
  xs: number[];
  ys: number[];
  /** row-major [ix][iy], aligned with xs/ys */
  cells: (SweepRow | undefined)[][];
  maxAbsDelta: number;
}

export function buildHeatmap(rows: SweepRow[]): HeatmapModel {
  const xs = [...new Set(rows.map((r) => r.x))].sort((a, b) => a - b);
  const ys = [...new Set(rows.map((r) => r.y))].sort((a, b) => a - b);
  const xi = new Map(xs.map((v, i) => [v, i]));
  const yi = new Map(ys.map((v, i) => [v, i]));
  const cells: (SweepRow | undefined)[][] = xs.map(() => new Array(ys.length).fill(undefined));
  let maxAbs = 0;
  for (const r of rows) {
    cells[xi.get(r.x)!][yi.get(r.y)!] = r;
    if (!r.skipped && r.delta !== null && Math.abs(r.delta) > maxAbs) {
      maxAbs = Math.abs(r.delta);
    }
  }
  return { xs, ys, cells, maxAbsDelta: maxAbs };
}

/** Diverging blue-white-red scale centered at zero. */
export function divergingColor(delta: number, maxAbs: number): string {
  if (maxAbs <= 0) return "rgb(255,255,255)";
  const t = Math.max(-1, Math.min(1, delta / maxAbs));
  const other = Math.round(255 * (1 - Math.abs(t)));
  return t >= 0 ? `rgb(255,${other},${other})` : `rgb(${other},${other},255)`;
}

export function cellColor(row: SweepRow | undefined, maxAbs: number): string {
  if (!row || row.skipped || row.delta === null) return "rgb(230,230,230)";
  return divergingColor(row.delta, maxAbs);
}

export function isIndeterminate(row: SweepRow): boolean {
  return (
    !row.skipped &&
    row.delta !== null &&
    row.bracket !== null &&
    Math.abs(row.delta) <= row.bracket
  );
}

/** Index of the grid cell nearest to (x, y); ties take the smaller index. */
export function nearestCell(model: HeatmapModel, x: number, y: number): { ix: number; iy: number } {
  const pick = (vals: number[], target: number) => {
    let best = 0;
    let bestDist = Infinity;
    vals.forEach((v, i) => {
      const d = Math.abs(v - target);
      if (d < bestDist) {
        bestDist = d;
        best = i;
      }
    });
    return best;
  };
  return { ix: pick(model.xs, x), iy: pick(model.ys, y) };
}
