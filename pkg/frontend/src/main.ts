/** DOM wiring for the two panels: geometry editor with solve + contour
 * display, and the sweep explorer with its polled heatmap. */

import { apiBase, ApiRequestError, getSolution, pollSweep, postQuad, postRing, startSweep } from "./api";
import { contourBands } from "./contours";
import { EditorState, ToolMode } from "./editor";
import { DEFAULT_ANGLES, experimentQuads } from "./experiments";
import { buildHeatmap, HeatmapModel, isIndeterminate, nearestCell } from "./heatmap";
import { drawContours, drawHeatmap, drawMesh, drawPolygon, drawVertices, fitViewport, toWorld } from "./render";
import type { ExperimentId, MeshPayload, ModulusResult, Pt, SweepRow } from "./types";
import { quadResultView, ringResultView, sweepCellDetail } from "./ui";

const base = apiBase();
const state = new EditorState();
let lastMesh: MeshPayload | null = null;
let heatmap: HeatmapModel | null = null;
let currentExperiment: ExperimentId = "dupl";
let badVertices = new Set<number>();

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function editorCanvas(): HTMLCanvasElement {
  return el<HTMLCanvasElement>("editor-canvas");
}

function heatmapCanvas(): HTMLCanvasElement {
  return el<HTMLCanvasElement>("heatmap-canvas");
}

function activePoints(): Pt[] {
  if (state.mode === "quad") return state.quadVertices;
  return state.mode === "ring-outer" ? state.outerVertices : state.innerVertices;
}

function redrawEditor(): void {
  const canvas = editorCanvas();
  const ctx = canvas.getContext("2d")!;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const everything = [
    ...state.quadVertices, ...state.outerVertices, ...state.innerVertices,
    ...(lastMesh ? lastMesh.nodes.map(([x, y]) => ({ x, y })) : []),
  ];
  const vp = fitViewport(everything, canvas.width, canvas.height);
  if (lastMesh) {
    drawContours(ctx, vp, contourBands(lastMesh));
    drawMesh(ctx, vp, lastMesh);
  }
  if (state.mode === "quad") {
    if (state.quadVertices.length) {
      drawPolygon(ctx, vp, state.quadVertices, { stroke: "#222" });
      drawVertices(ctx, vp, state.quadVertices, state.marked, badVertices);
    }
  } else {
    if (state.outerVertices.length) drawPolygon(ctx, vp, state.outerVertices, { stroke: "#222" });
    if (state.innerVertices.length) drawPolygon(ctx, vp, state.innerVertices, { stroke: "#b50" });
    drawVertices(ctx, vp, state.outerVertices, [], badVertices);
    drawVertices(ctx, vp, state.innerVertices, [], new Set());
  }
  renderTable();
  renderIssues();
}

function renderTable(): void {
  const tbody = el<HTMLTableSectionElement>("coord-body");
  tbody.innerHTML = "";
  activePoints().forEach((p, i) => {
    const tr = document.createElement("tr");
    const mark = state.mode === "quad" && state.marked.includes(i) ? ` z${state.marked.indexOf(i) + 1}` : "";
    tr.innerHTML = `<td>${i}${mark}</td>`;
    for (const axis of ["x", "y"] as const) {
      const td = document.createElement("td");
      const input = document.createElement("input");
      input.type = "number";
      input.step = "any";
      input.value = String(p[axis]);
      input.addEventListener("change", () => {
        const np = { ...activePoints()[i], [axis]: Number(input.value) };
        state.setVertex(i, np);
        lastMesh = null;
        redrawEditor();
      });
      td.appendChild(input);
      tr.appendChild(td);
    }
    if (state.mode === "quad") {
      const td = document.createElement("td");
      const btn = document.createElement("button");
      btn.textContent = state.marked.includes(i) ? "unmark" : "mark";
      btn.addEventListener("click", () => {
        state.toggleMarked(i);
        redrawEditor();
      });
      td.appendChild(btn);
      tr.appendChild(td);
    }
    tbody.appendChild(tr);
  });
}

function renderIssues(): void {
  const issues = state.issues();
  badVertices = new Set(issues.flatMap((i) => i.vertices));
  el("issues").textContent = issues.map((i) => i.message).join("; ");
  el<HTMLButtonElement>("solve").disabled = !state.canSubmit();
}

function showResult(headline: string, lines: string[]): void {
  el("result-headline").textContent = headline;
  el("result-lines").innerHTML = lines.map((l) => `<div>${l}</div>`).join("");
}

async function solve(): Promise<void> {
  try {
    if (state.mode === "quad") {
      const payload = state.quadPayload();
      const res = await postQuad(base, payload.vertices, payload.marked);
      const view = quadResultView(res);
      showResult(view.headline, view.lines);
      if (res.solution_id) {
        lastMesh = await getSolution(base, res.solution_id);
      }
    } else {
      const payload = state.ringPayload();
      const res = await postRing(base, payload.outer, payload.inner);
      const view = ringResultView(res);
      showResult(view.headline, view.lines);
      if (res.solution_id) {
        lastMesh = await getSolution(base, res.solution_id);
      }
    }
  } catch (err) {
    if (err instanceof ApiRequestError) {
      showResult("rejected", [`${err.detail.reason}: ${err.detail.message}`]);
    } else {
      showResult("error", [String(err)]);
    }
  }
  redrawEditor();
}

async function runSweep(): Promise<void> {
  const nx = Number(el<HTMLInputElement>("sweep-n").value) || 20;
  const grid = {
    x_min: 0.05, x_max: 1.95, nx,
    y_min: 0.05, y_max: 1.95, ny: nx,
    ...DEFAULT_ANGLES[currentExperiment],
  };
  const progress = el<HTMLProgressElement>("sweep-progress");
  progress.value = 0;
  el("sweep-status").textContent = "running";
  try {
    const { id } = await startSweep(base, currentExperiment, grid);
    const job = await pollSweep(base, id, (f) => {
      progress.value = f;
    }).promise;
    const rows = job.result!.rows;
    heatmap = buildHeatmap(rows);
    el("sweep-status").textContent = `done: ${JSON.stringify(job.result!.summary)}`;
    const ctx = heatmapCanvas().getContext("2d")!;
    drawHeatmap(ctx, heatmap, heatmapCanvas().width, heatmapCanvas().height);
  } catch (err) {
    el("sweep-status").textContent = String(err);
  }
}

async function refineCell(row: SweepRow): Promise<void> {
  const quads = experimentQuads(currentExperiment, row.x, row.y, undefined, undefined);
  const detailNode = el("cell-detail");
  if (!quads) {
    const d = sweepCellDetail(row, isIndeterminate(row));
    detailNode.textContent = [d.title, ...d.lines].join("\n");
    return;
  }
  detailNode.textContent = "refining...";
  try {
    const solveAll = (vs: [number, number][][]) =>
      Promise.all(vs.map((v) => postQuad(base, v, undefined, 2e-4, 60_000)));
    const [lhs, rhs] = await Promise.all([solveAll(quads.lhs), solveAll(quads.rhs)]);
    const d = sweepCellDetail(row, isIndeterminate(row), { lhs, rhs });
    detailNode.textContent = [d.title, ...d.lines].join("\n");
  } catch (err) {
    detailNode.textContent = String(err);
  }
}

function wire(): void {
  editorCanvas().addEventListener("click", (ev) => {
    const rect = editorCanvas().getBoundingClientRect();
    const vp = fitViewport(
      activePoints().length ? activePoints() : [{ x: 0, y: 0 }, { x: 2, y: 2 }],
      editorCanvas().width,
      editorCanvas().height,
    );
    const p = toWorld(vp, ev.clientX - rect.left, ev.clientY - rect.top);
    state.addVertex({ x: Number(p.x.toFixed(3)), y: Number(p.y.toFixed(3)) });
    lastMesh = null;
    redrawEditor();
  });
  el("mode").addEventListener("change", () => {
    state.mode = el<HTMLSelectElement>("mode").value as ToolMode;
    lastMesh = null;
    redrawEditor();
  });
  el("snap").addEventListener("change", () => {
    state.snap = el<HTMLInputElement>("snap").checked;
  });
  el("undo").addEventListener("click", () => {
    state.removeLast();
    lastMesh = null;
    redrawEditor();
  });
  el("clear").addEventListener("click", () => {
    state.clear();
    lastMesh = null;
    redrawEditor();
  });
  el("regular").addEventListener("click", () => {
    state.useRegularPolygon(
      Number(el<HTMLInputElement>("reg-n").value) || 6,
      Number(el<HTMLInputElement>("reg-cx").value) || 0,
      Number(el<HTMLInputElement>("reg-cy").value) || 0,
      Number(el<HTMLInputElement>("reg-r").value) || 1,
    );
    lastMesh = null;
    redrawEditor();
  });
  el("solve").addEventListener("click", () => void solve());
  el("experiment").addEventListener("change", () => {
    currentExperiment = el<HTMLSelectElement>("experiment").value as ExperimentId;
  });
  el("run-sweep").addEventListener("click", () => void runSweep());
  heatmapCanvas().addEventListener("click", (ev) => {
    if (!heatmap) return;
    const rect = heatmapCanvas().getBoundingClientRect();
    const fx = (ev.clientX - rect.left) / rect.width;
    const fy = 1 - (ev.clientY - rect.top) / rect.height;
    const x = heatmap.xs[0] + fx * (heatmap.xs[heatmap.xs.length - 1] - heatmap.xs[0]);
    const y = heatmap.ys[0] + fy * (heatmap.ys[heatmap.ys.length - 1] - heatmap.ys[0]);
    const { ix, iy } = nearestCell(heatmap, x, y);
    const row = heatmap.cells[ix][iy];
    if (row) void refineCell(row);
  });
  redrawEditor();
}

document.addEventListener("DOMContentLoaded", wire);
