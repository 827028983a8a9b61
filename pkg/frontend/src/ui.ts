/** Pure view-model builders: every number shown comes verbatim from an API
 * payload (see format.ts), so these are testable without a DOM. */

import { displayBracket, displayNumber } from "./format";
import type { CapacityResult, ModulusResult, SweepRow } from "./types";

export interface ResultView {
  headline: string;
  lines: string[];
}

export function quadResultView(res: ModulusResult): ResultView {
  return {
    headline: `modulus ${displayNumber(res.value)}`,
    lines: [
      `bracket ${displayBracket(res.lower, res.upper)}`,
      `dofs ${res.dofs}, levels ${res.levels}${res.converged ? "" : " (budget exhausted)"}`,
    ],
  };
}

export function ringResultView(res: CapacityResult): ResultView {
  return {
    headline: `capacity ${displayNumber(res.capacity)}`,
    lines: [
      `modulus ${displayNumber(res.modulus)}`,
      `dofs ${res.dofs}, levels ${res.levels}${res.converged ? "" : " (budget exhausted)"}`,
    ],
  };
}

export interface CellDetail {
  title: string;
  lines: string[];
}

/** Detail text for a clicked heatmap cell, with optional re-run moduli. */
export function sweepCellDetail(
  row: SweepRow,
  indeterminate: boolean,
  rerun?: { lhs: ModulusResult[]; rhs: ModulusResult[] },
): CellDetail {
  const lines = [
    `lhs ${displayNumber(row.lhs)}   rhs ${displayNumber(row.rhs)}`,
    `delta ${displayNumber(row.delta)}   bracket ${displayNumber(row.bracket)}`,
  ];
  if (row.skipped) lines.push("skipped: invalid geometry at this grid point");
  else if (indeterminate) lines.push("indeterminate: |delta| within bracket width");
  if (rerun) {
    rerun.lhs.forEach((m, i) => lines.push(`refined lhs[${i}] ${displayNumber(m.value)} ± ${displayNumber((m.upper - m.lower) / 2)}`));
    rerun.rhs.forEach((m, i) => lines.push(`refined rhs[${i}] ${displayNumber(m.value)} ± ${displayNumber((m.upper - m.lower) / 2)}`));
  }
  return { title: `cell (${displayNumber(row.x)}, ${displayNumber(row.y)})`, lines };
}
