/** Filled contour bands of the P1 potential, extracted per triangle by
 * linear interpolation along edges. Exact for the discrete solution: no
 * resampling, no marching-squares grid. */

import type { MeshPayload, Pt } from "./types";

interface Corner {
  p: Pt;
  v: number;
}

function clipByValue(poly: Corner[], level: number, keepAbove: boolean): Corner[] {
  const out: Corner[] = [];
  const n = poly.length;
  for (let i = 0; i < n; i++) {
    const a = poly[i];
    const b = poly[(i + 1) % n];
    const aIn = keepAbove ? a.v >= level : a.v <= level;
    const bIn = keepAbove ? b.v >= level : b.v <= level;
    if (aIn) out.push(a);
    if (aIn !== bIn) {
      const t = (level - a.v) / (b.v - a.v);
      out.push({
        p: { x: a.p.x + t * (b.p.x - a.p.x), y: a.p.y + t * (b.p.y - a.p.y) },
        v: level,
      });
    }
  }
  return out;
}

/** Part of one triangle with lo <= u <= hi, as a convex polygon (possibly empty). */
export function triangleBand(pts: [Pt, Pt, Pt], vals: [number, number, number], lo: number, hi: number): Pt[] {
  let poly: Corner[] = pts.map((p, i) => ({ p, v: vals[i] }));
  poly = clipByValue(poly, lo, true);
  if (poly.length) poly = clipByValue(poly, hi, false);
  return poly.length >= 3 ? poly.map((c) => c.p) : [];
}

export interface Band {
  lo: number;
  hi: number;
  polygons: Pt[][];
}

/** Ten filled bands between the levels 0, 0.1, ..., 0.9, 1. */
export function contourBands(mesh: MeshPayload, innerLevels?: number[]): Band[] {
  const levels = [0, ...(innerLevels ?? defaultLevels()), 1];
  const bands: Band[] = [];
  for (let k = 0; k + 1 < levels.length; k++) {
    bands.push({ lo: levels[k], hi: levels[k + 1], polygons: [] });
  }
  for (const [i, j, l] of mesh.triangles) {
    const pts: [Pt, Pt, Pt] = [
      { x: mesh.nodes[i][0], y: mesh.nodes[i][1] },
      { x: mesh.nodes[j][0], y: mesh.nodes[j][1] },
      { x: mesh.nodes[l][0], y: mesh.nodes[l][1] },
    ];
    const vals: [number, number, number] = [mesh.values[i], mesh.values[j], mesh.values[l]];
    for (const band of bands) {
      const poly = triangleBand(pts, vals, band.lo, band.hi);
      if (poly.length) band.polygons.push(poly);
    }
  }
  return bands;
}

export function defaultLevels(): number[] {
  return Array.from({ length: 9 }, (_, k) => (k + 1) / 10);
}

export function polygonArea(poly: Pt[]): number {
  let s = 0;
  for (let i = 0; i < poly.length; i++) {
    const a = poly[i];
    const b = poly[(i + 1) % poly.length];
    s += a.x * b.y - b.x * a.y;
  }
  return Math.abs(s) / 2;
}
