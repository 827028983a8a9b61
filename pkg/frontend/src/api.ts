/** Thin fetch client for the solver API plus job polling. */

import type {
  ApiError,
  CapacityResult,
  ExperimentId,
  GridSpec,
  MeshPayload,
  ModulusResult,
  SweepJob,
} from "./types";

export class ApiRequestError extends Error {
  constructor(public status: number, public detail: ApiError) {
    super(detail.message || detail.reason);
  }
}

export function apiBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return (fromQuery || "http://127.0.0.1:8000").replace(/\/$/, "");
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(base + path, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const body = await resp.json();
  // 422 carries a valid (unconverged) result body, not an error
  if (!resp.ok && resp.status !== 422) {
    throw new ApiRequestError(resp.status, body as ApiError);
  }
  return body as T;
}

export function postQuad(
  base: string,
  vertices: [number, number][],
  marked?: number[],
  tol?: number,
  maxDofs?: number,
): Promise<ModulusResult> {
  return request(base, "/api/quad", {
    method: "POST",
    body: JSON.stringify({ vertices, marked, tol, max_dofs: maxDofs }),
  });
}

export function postRing(
  base: string,
  outer: [number, number][],
  inner: [number, number][],
  tol?: number,
): Promise<CapacityResult> {
  return request(base, "/api/ring", {
    method: "POST",
    body: JSON.stringify({ outer: { vertices: outer }, inner: { vertices: inner }, tol }),
  });
}

export function getSolution(base: string, id: string): Promise<MeshPayload> {
  return request(base, `/api/solution/${id}`);
}

export function startSweep(
  base: string,
  experiment: ExperimentId,
  grid: GridSpec,
  tol?: number,
): Promise<{ id: string }> {
  return request(base, "/api/sweeps", {
    method: "POST",
    body: JSON.stringify({ experiment, grid, tol }),
  });
}

export function getSweep(base: string, id: string): Promise<SweepJob> {
  return request(base, `/api/sweeps/${id}`);
}

export interface Poller {
  promise: Promise<SweepJob>;
  cancel(): void;
}

/** Poll a sweep job until done/failed, reporting progress along the way. */
export function pollSweep(
  base: string,
  id: string,
  onProgress: (fraction: number) => void,
  intervalMs = 500,
  fetchJob: (base: string, id: string) => Promise<SweepJob> = getSweep,
): Poller {
  let cancelled = false;
  let timer: ReturnType<typeof setTimeout> | undefined;
  let cancelReject: (err: Error) => void = () => {};
  const promise = new Promise<SweepJob>((resolve, reject) => {
    cancelReject = reject;
    const tick = async () => {
      if (cancelled) return;
      let job: SweepJob;
      try {
        job = await fetchJob(base, id);
      } catch (err) {
        return reject(err);
      }
      if (cancelled) return;
      onProgress(job.progress);
      if (job.state === "done") return resolve(job);
      if (job.state === "failed") return reject(new Error(job.error || "sweep failed"));
      timer = setTimeout(tick, intervalMs);
    };
    tick();
  });
  return {
    promise,
    cancel() {
      cancelled = true;
      if (timer) clearTimeout(timer);
      cancelReject(new Error("cancelled"));
    },
  };
}
