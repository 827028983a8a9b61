import { describe, expect, it } from "vitest";

import { pollSweep } from "../src/api";
import type { SweepJob } from "../src/types";

function scripted(states: SweepJob[]): (base: string, id: string) => Promise<SweepJob> {
  let call = 0;
  return async () => states[Math.min(call++, states.length - 1)];
}

describe("pollSweep", () => {
  it("reports progress and resolves on done", async () => {
    const job = (state: SweepJob["state"], progress: number, extra: Partial<SweepJob> = {}): SweepJob => ({
      id: "j1",
      state,
      progress,
      ...extra,
    });
    const done = job("done", 1, { result: { rows: [], summary: {} } });
    const seen: number[] = [];
    const poller = pollSweep(
      "http://example",
      "j1",
      (f) => seen.push(f),
      1,
      scripted([job("queued", 0), job("running", 0.5), done]),
    );
    const final = await poller.promise;
    expect(final.state).toBe("done");
    expect(seen).toEqual([0, 0.5, 1]);
  });

  it("rejects when the job fails", async () => {
    const poller = pollSweep(
      "http://example",
      "j2",
      () => {},
      1,
      scripted([
        { id: "j2", state: "running", progress: 0.2 },
        { id: "j2", state: "failed", progress: 0.2, error: "boom" },
      ]),
    );
    await expect(poller.promise).rejects.toThrow("boom");
  });

  it("stops polling when cancelled", async () => {
    let calls = 0;
    const fetchJob = async (): Promise<SweepJob> => {
      calls++;
      return { id: "j3", state: "running", progress: 0.1 };
    };
    const poller = pollSweep("http://example", "j3", () => {}, 1, fetchJob);
    await new Promise((r) => setTimeout(r, 5));
    poller.cancel();
    const callsAtCancel = calls;
    await new Promise((r) => setTimeout(r, 20));
    expect(calls - callsAtCancel).toBeLessThanOrEqual(1);
    await expect(poller.promise).rejects.toThrow();
  });
});
