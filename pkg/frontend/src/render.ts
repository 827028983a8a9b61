/** Canvas painting: world-to-screen transform, polygons, mesh wireframe,
 * contour bands, heatmap cells. */

import type { Band } from "./contours";
import { cellColor, HeatmapModel, isIndeterminate } from "./heatmap";
import type { MeshPayload, Pt } from "./types";

export interface Viewport {
  scale: number;
  offsetX: number;
  offsetY: number;
}

export function fitViewport(points: Pt[], width: number, height: number, margin = 30): Viewport {
  if (!points.length) return { scale: 60, offsetX: width / 2, offsetY: height / 2 };
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = Math.min((width - 2 * margin) / spanX, (height - 2 * margin) / spanY);
  return {
    scale,
    offsetX: width / 2 - scale * (minX + maxX) / 2,
    offsetY: height / 2 + scale * (minY + maxY) / 2,
  };
}

export function toScreen(v: Viewport, p: Pt): [number, number] {
  return [v.scale * p.x + v.offsetX, -v.scale * p.y + v.offsetY];
}

export function toWorld(v: Viewport, sx: number, sy: number): Pt {
  return { x: (sx - v.offsetX) / v.scale, y: (v.offsetY - sy) / v.scale };
}

function tracePath(ctx: CanvasRenderingContext2D, v: Viewport, pts: Pt[], close: boolean): void {
  if (!pts.length) return;
  ctx.beginPath();
  const [x0, y0] = toScreen(v, pts[0]);
  ctx.moveTo(x0, y0);
  for (let i = 1; i < pts.length; i++) {
    const [x, y] = toScreen(v, pts[i]);
    ctx.lineTo(x, y);
  }
  if (close) ctx.closePath();
}

export function drawPolygon(
  ctx: CanvasRenderingContext2D,
  v: Viewport,
  pts: Pt[],
  options: { stroke?: string; fill?: string; close?: boolean } = {},
): void {
  tracePath(ctx, v, pts, options.close ?? true);
  if (options.fill) {
    ctx.fillStyle = options.fill;
    ctx.fill();
  }
  ctx.strokeStyle = options.stroke ?? "#333";
  ctx.lineWidth = 1.5;
  ctx.stroke();
}

export function drawVertices(
  ctx: CanvasRenderingContext2D,
  v: Viewport,
  pts: Pt[],
  marked: number[],
  bad: Set<number>,
): void {
  pts.forEach((p, i) => {
    const [x, y] = toScreen(v, p);
    ctx.beginPath();
    ctx.arc(x, y, marked.includes(i) ? 6 : 4, 0, 2 * Math.PI);
    ctx.fillStyle = bad.has(i) ? "#d33" : marked.includes(i) ? "#06c" : "#888";
    ctx.fill();
    if (marked.includes(i)) {
      ctx.fillStyle = "#06c";
      ctx.font = "12px sans-serif";
      ctx.fillText(`z${marked.indexOf(i) + 1}`, x + 8, y - 8);
    }
  });
}

const BAND_COLORS = [
  "#2c7bb6", "#4d9ec6", "#74b7d4", "#9ecfe0", "#c7e3ea",
  "#f4d7c8", "#f0b8a1", "#e7947b", "#d96d5a", "#c7433c",
];

export function drawContours(ctx: CanvasRenderingContext2D, v: Viewport, bands: Band[]): void {
  bands.forEach((band, k) => {
    ctx.fillStyle = BAND_COLORS[k % BAND_COLORS.length];
    for (const poly of band.polygons) {
      tracePath(ctx, v, poly, true);
      ctx.fill();
    }
  });
}

export function drawMesh(ctx: CanvasRenderingContext2D, v: Viewport, mesh: MeshPayload): void {
  ctx.strokeStyle = "rgba(60,60,60,0.35)";
  ctx.lineWidth = 0.5;
  for (const [i, j, k] of mesh.triangles) {
    const pts = [i, j, k].map((n) => ({ x: mesh.nodes[n][0], y: mesh.nodes[n][1] }));
    tracePath(ctx, v, pts, true);
    ctx.stroke();
  }
}

export function drawHeatmap(
  ctx: CanvasRenderingContext2D,
  model: HeatmapModel,
  width: number,
  height: number,
): void {
  const { xs, ys, cells, maxAbsDelta } = model;
  const cw = width / xs.length;
  const ch = height / ys.length;
  for (let ix = 0; ix < xs.length; ix++) {
    for (let iy = 0; iy < ys.length; iy++) {
      const row = cells[ix][iy];
      ctx.fillStyle = cellColor(row, maxAbsDelta);
      const sx = ix * cw;
      const sy = height - (iy + 1) * ch;
      ctx.fillRect(sx, sy, Math.ceil(cw), Math.ceil(ch));
      if (row && isIndeterminate(row)) {
        ctx.strokeStyle = "rgba(0,0,0,0.45)";
        ctx.beginPath();
        ctx.moveTo(sx, sy + ch);
        ctx.lineTo(sx + cw, sy);
        ctx.stroke();
      }
    }
  }
}
