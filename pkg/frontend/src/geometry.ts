/** Client-side mirror of the server's polygon validation rules, so bad
 * input is caught before any network call and the offending vertices can
 * be highlighted in the editor. The server remains the authority. */

import type { Pt } from "./types";

export interface ValidationIssue {
  code: string;
  message: string;
  /** indices of vertices involved, for highlighting */
  vertices: number[];
}

export function signedArea(pts: Pt[]): number {
  let s = 0;
  const n = pts.length;
  for (let i = 0; i < n; i++) {
    const a = pts[i];
    const b = pts[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

function orient(a: Pt, b: Pt, c: Pt): number {
  const v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return v > 0 ? 1 : v < 0 ? -1 : 0;
}

function onSegment(a: Pt, b: Pt, p: Pt): boolean {
  return (
    Math.min(a.x, b.x) <= p.x && p.x <= Math.max(a.x, b.x) &&
    Math.min(a.y, b.y) <= p.y && p.y <= Math.max(a.y, b.y)
  );
}

export function segmentsIntersect(a: Pt, b: Pt, c: Pt, d: Pt): boolean {
  const o1 = orient(a, b, c);
  const o2 = orient(a, b, d);
  const o3 = orient(c, d, a);
  const o4 = orient(c, d, b);
  if (o1 !== o2 && o3 !== o4) return true;
  if (o1 === 0 && onSegment(a, b, c)) return true;
  if (o2 === 0 && onSegment(a, b, d)) return true;
  if (o3 === 0 && onSegment(c, d, a)) return true;
  if (o4 === 0 && onSegment(c, d, b)) return true;
  return false;
}

/** All rule violations for a would-be polygon; empty list means valid. */
export function polygonIssues(pts: Pt[]): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  const n = pts.length;
  if (n < 3) {
    issues.push({ code: "too-few-vertices", message: `need at least 3 vertices, have ${n}`, vertices: [] });
    return issues;
  }
  for (let i = 0; i < n; i++) {
    const j = (i + 1) % n;
    if (pts[i].x === pts[j].x && pts[i].y === pts[j].y) {
      issues.push({ code: "duplicate-point", message: `vertices ${i} and ${j} coincide`, vertices: [i, j] });
    }
  }
  if (issues.length) return issues;
  for (let i = 0; i < n; i++) {
    const [a, b] = [pts[i], pts[(i + 1) % n]];
    for (let j = i + 1; j < n; j++) {
      const adjacent = j === i + 1 || (i === 0 && j === n - 1);
      if (adjacent) continue;
      const [c, d] = [pts[j], pts[(j + 1) % n]];
      if (segmentsIntersect(a, b, c, d)) {
        issues.push({
          code: "self-intersection",
          message: `edges ${i} and ${j} cross`,
          vertices: [i, (i + 1) % n, j, (j + 1) % n],
        });
      }
    }
  }
  if (!issues.length && signedArea(pts) === 0) {
    issues.push({ code: "degenerate", message: "polygon has zero area", vertices: [] });
  }
  return issues;
}

/** Strict point-in-polygon (boundary excluded), for ring nesting checks. */
export function pointInPolygon(p: Pt, poly: Pt[]): boolean {
  let inside = false;
  const n = poly.length;
  for (let i = 0; i < n; i++) {
    const a = poly[i];
    const b = poly[(i + 1) % n];
    if (orient(a, b, p) === 0 && onSegment(a, b, p)) return false;
    if (a.y > p.y !== b.y > p.y) {
      const xc = a.x + ((p.y - a.y) * (b.x - a.x)) / (b.y - a.y);
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

export function ringIssues(outer: Pt[], inner: Pt[]): ValidationIssue[] {
  const issues = [...polygonIssues(outer), ...polygonIssues(inner)];
  if (issues.length) return issues;
  inner.forEach((p, i) => {
    if (!pointInPolygon(p, outer)) {
      issues.push({ code: "not-inside", message: `inner vertex ${i} is not inside the outer polygon`, vertices: [i] });
    }
  });
  for (let i = 0; i < outer.length; i++) {
    for (let j = 0; j < inner.length; j++) {
      if (
        segmentsIntersect(
          outer[i], outer[(i + 1) % outer.length],
          inner[j], inner[(j + 1) % inner.length],
        )
      ) {
        issues.push({ code: "not-inside", message: "boundaries touch or cross", vertices: [] });
        return issues;
      }
    }
  }
  return issues;
}

/** Keep four marked indices in cyclic order along the drawn loop. */
export function cyclicMarked(marked: number[]): number[] {
  return [...marked].sort((a, b) => a - b);
}

export function regularPolygon(n: number, cx: number, cy: number, radius: number): Pt[] {
  const pts: Pt[] = [];
  for (let k = 0; k < n; k++) {
    const t = (2 * Math.PI * k) / n;
    pts.push({ x: cx + radius * Math.cos(t), y: cy + radius * Math.sin(t) });
  }
  return pts;
}
