/** Editor state: vertices being drawn, marked points, tool mode, snapping.
 * Pure state machine, no DOM; the canvas layer renders it and feeds events
 * in. Submission is gated on the same validation rules the server applies,
 * so a bowtie never reaches the network. */

import { cyclicMarked, polygonIssues, regularPolygon, ringIssues, ValidationIssue } from "./geometry";
import type { Pt } from "./types";

export type ToolMode = "quad" | "ring-outer" | "ring-inner";

export class EditorState {
  mode: ToolMode = "quad";
  quadVertices: Pt[] = [];
  marked: number[] = [];
  outerVertices: Pt[] = [];
  innerVertices: Pt[] = [];
  snap = false;
  snapStep = 0.25;

  private target(): Pt[] {
    if (this.mode === "quad") return this.quadVertices;
    return this.mode === "ring-outer" ? this.outerVertices : this.innerVertices;
  }

  snapPoint(p: Pt): Pt {
    if (!this.snap) return p;
    const s = this.snapStep;
    return { x: Math.round(p.x / s) * s, y: Math.round(p.y / s) * s };
  }

  addVertex(p: Pt): void {
    this.target().push(this.snapPoint(p));
  }

  setVertex(index: number, p: Pt): void {
    const t = this.target();
    if (index >= 0 && index < t.length) t[index] = p;
  }

  removeLast(): void {
    const t = this.target();
    t.pop();
    if (this.mode === "quad") {
      this.marked = this.marked.filter((i) => i < t.length);
    }
  }

  clear(): void {
    this.target().length = 0;
    if (this.mode === "quad") this.marked = [];
  }

  /** Toggle a marked point; at most four, kept in cyclic order. */
  toggleMarked(index: number): void {
    if (this.mode !== "quad" || index < 0 || index >= this.quadVertices.length) return;
    if (this.marked.includes(index)) {
      this.marked = this.marked.filter((i) => i !== index);
    } else if (this.marked.length < 4) {
      this.marked = cyclicMarked([...this.marked, index]);
    }
  }

  useRegularPolygon(n: number, cx: number, cy: number, radius: number): void {
    const pts = regularPolygon(n, cx, cy, radius);
    const t = this.target();
    t.length = 0;
    t.push(...pts);
    if (this.mode === "quad") this.marked = [];
  }

  issues(): ValidationIssue[] {
    if (this.mode === "quad") {
      const out = polygonIssues(this.quadVertices);
      if (this.quadVertices.length >= 3 && this.marked.length !== 4) {
        out.push({
          code: "bad-marking",
          message: `mark exactly 4 boundary vertices (${this.marked.length} so far)`,
          vertices: [],
        });
      }
      return out;
    }
    if (this.outerVertices.length < 3 || this.innerVertices.length < 3) {
      return [{ code: "too-few-vertices", message: "draw both the outer and the inner polygon", vertices: [] }];
    }
    return ringIssues(this.outerVertices, this.innerVertices);
  }

  canSubmit(): boolean {
    return this.issues().length === 0;
  }

  quadPayload(): { vertices: [number, number][]; marked: number[] } {
    return {
      vertices: this.quadVertices.map((p) => [p.x, p.y]),
      marked: cyclicMarked(this.marked),
    };
  }

  ringPayload(): { outer: [number, number][]; inner: [number, number][] } {
    return {
      outer: this.outerVertices.map((p) => [p.x, p.y]),
      inner: this.innerVertices.map((p) => [p.x, p.y]),
    };
  }
}
