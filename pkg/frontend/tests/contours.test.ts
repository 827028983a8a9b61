import { describe, expect, it } from "vitest";

import { contourBands, defaultLevels, polygonArea, triangleBand } from "../src/contours";
import type { MeshPayload, Pt } from "../src/types";

const tri: [Pt, Pt, Pt] = [
  { x: 0, y: 0 },
  { x: 1, y: 0 },
  { x: 0, y: 1 },
];

describe("triangleBand", () => {
  it("returns the whole triangle when the band covers all values", () => {
    const poly = triangleBand(tri, [0, 1, 0.5], 0, 1);
    expect(polygonArea(poly)).toBeCloseTo(0.5, 12);
  });

  it("returns empty when the band misses the value range", () => {
    expect(triangleBand(tri, [0, 0.2, 0.1], 0.5, 0.9)).toEqual([]);
  });

  it("clips a linear field at the right place", () => {
    // u = x on this triangle: band 0.25..0.75 is a vertical strip
    const poly = triangleBand(tri, [0, 1, 0], 0.25, 0.75);
    expect(poly.length).toBeGreaterThanOrEqual(3);
    for (const p of poly) {
      expect(p.x).toBeGreaterThanOrEqual(0.25 - 1e-12);
      expect(p.x).toBeLessThanOrEqual(0.75 + 1e-12);
    }
    // exact area of {0.25 <= x <= 0.75} in the unit right triangle
    const expected = 0.5 * (0.75 - 0.25) * (2 - 0.25 - 0.75);
    expect(polygonArea(poly)).toBeCloseTo(expected, 12);
  });
});

describe("contourBands", () => {
  const mesh: MeshPayload = {
    nodes: [
      [0, 0],
      [1, 0],
      [1, 1],
      [0, 1],
    ],
    triangles: [
      [0, 1, 2],
      [0, 2, 3],
    ],
    boundary: [],
    values: [0, 1, 1, 0], // u = x on the unit square
  };

  it("partitions the domain into ten bands of equal area for u = x", () => {
    const bands = contourBands(mesh);
    expect(bands).toHaveLength(10);
    for (const band of bands) {
      const area = band.polygons.reduce((s, p) => s + polygonArea(p), 0);
      expect(area).toBeCloseTo(0.1, 10);
    }
  });

  it("uses the inner levels 0.1..0.9", () => {
    expect(defaultLevels()).toHaveLength(9);
    expect(defaultLevels()[0]).toBeCloseTo(0.1, 12);
    expect(defaultLevels()[8]).toBeCloseTo(0.9, 12);
  });
});
