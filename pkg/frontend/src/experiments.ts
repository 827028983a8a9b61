/** Grid-point to quadrilateral mapping for the sweep experiments, mirroring
 * the server definitions. Used when a heatmap cell is clicked: the involved
 * quadrilaterals are re-submitted one by one at a tighter tolerance, and the
 * displayed moduli are exactly the API's. */

import type { ExperimentId } from "./types";

interface C {
  re: number;
  im: number;
}

const c = (re: number, im = 0): C => ({ re, im });
const add = (a: C, b: C): C => c(a.re + b.re, a.im + b.im);
const sub = (a: C, b: C): C => c(a.re - b.re, a.im - b.im);
const conj = (a: C): C => c(a.re, -a.im);
const polar = (r: number, t: number): C => c(r * Math.cos(t), r * Math.sin(t));
const abs = (a: C): number => Math.hypot(a.re, a.im);

function quad(...zs: C[]): [number, number][] {
  return zs.map((z) => [z.re, z.im]);
}

export interface ExperimentQuads {
  /** vertex lists whose moduli sum to the left-hand side */
  lhs: [number, number][][];
  /** vertex lists whose moduli sum to the right-hand side */
  rhs: [number, number][][];
}

export const DEFAULT_ANGLES: Record<string, { alpha?: number; beta?: number }> = {
  trans: { alpha: Math.PI / 8, beta: (3 * Math.PI) / 4 },
  area: { alpha: Math.PI / 4, beta: (3 * Math.PI) / 4 },
  dupl: {},
  sum: {},
};

/** The quadrilaterals behind one grid point, or null for the closed-form
 * sum experiment which has nothing to re-run. */
export function experimentQuads(
  experiment: ExperimentId,
  x: number,
  y: number,
  alpha?: number,
  beta?: number,
): ExperimentQuads | null {
  const zero = c(0);
  const one = c(1);
  if (experiment === "trans") {
    const a = add(one, polar(x, alpha ?? Math.PI / 8));
    const b = polar(y, beta ?? (3 * Math.PI) / 4);
    return {
      lhs: [quad(a, b, zero, one)],
      rhs: [quad(c(1, abs(sub(a, one))), c(0, abs(b)), zero, one)],
    };
  }
  if (experiment === "dupl") {
    const a = c(x, y);
    const phi = Math.atan2(a.im, a.re - 1);
    const b = polar(1, phi);
    return {
      lhs: [
        quad(a, b, zero, one),
        quad(conj(sub(one, b)), conj(sub(one, a)), zero, one),
      ],
      rhs: [quad(a, b, sub(one, a), sub(one, b))],
    };
  }
  if (experiment === "area") {
    const r = x;
    const s = y;
    const al = alpha ?? Math.PI / 4;
    const be = beta ?? (3 * Math.PI) / 4;
    const q1 = quad(add(one, polar(2 * r, al)), polar(2 * s, be), zero, one);
    // width follows from equal areas: t = area(Q1) / (r + s)
    const area1 = shoelace(q1);
    const t = area1 / (r + s);
    const q2 = quad(c(t, r), c(0, s), c(0, -s), c(t, -r));
    return { lhs: [q1], rhs: [q2] };
  }
  return null;
}

function shoelace(vertices: [number, number][]): number {
  let sum = 0;
  const n = vertices.length;
  for (let i = 0; i < n; i++) {
    const [x1, y1] = vertices[i];
    const [x2, y2] = vertices[(i + 1) % n];
    sum += x1 * y2 - x2 * y1;
  }
  return Math.abs(sum) / 2;
}
