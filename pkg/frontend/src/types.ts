export interface Pt {
  x: number;
  y: number;
}

export interface ModulusResult {
  value: number;
  lower: number;
  upper: number;
  dofs: number;
  levels: number;
  converged: boolean;
  solution_id?: string;
}

export interface CapacityResult {
  capacity: number;
  modulus: number;
  dofs: number;
  levels: number;
  converged: boolean;
  solution_id?: string;
}

export interface MeshPayload {
  nodes: [number, number][];
  triangles: [number, number, number][];
  boundary: [number, number, string][];
  values: number[];
}

export interface SweepRow {
  x: number;
  y: number;
  lhs: number | null;
  rhs: number | null;
  delta: number | null;
  bracket: number | null;
  skipped: boolean;
}

export interface SweepJob {
  id: string;
  state: "queued" | "running" | "done" | "failed";
  progress: number;
  result?: { rows: SweepRow[]; summary: Record<string, unknown> };
  error?: string;
}

export interface GridSpec {
  x_min: number;
  x_max: number;
  nx: number;
  y_min: number;
  y_max: number;
  ny: number;
  alpha?: number;
  beta?: number;
}

export type ExperimentId = "trans" | "dupl" | "area" | "sum";

export interface ApiError {
  reason: string;
  message: string;
}
