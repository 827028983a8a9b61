/** Display exactly what the API returned: numbers pass through JavaScript's
 * shortest round-trip representation of the received double, never a
 * client-side recomputation or truncation. */

export function displayNumber(v: number | null | undefined): string {
  if (v === null || v === undefined || Number.isNaN(v)) return "–";
  return String(v);
}

/** Bracket as an interval with full digits. */
export function displayBracket(lower: number, upper: number): string {
  return `[${displayNumber(lower)}, ${displayNumber(upper)}]`;
}

/** Short form for axis labels and table cells. */
export function shortNumber(v: number, digits = 4): string {
  if (!Number.isFinite(v)) return "–";
  const a = Math.abs(v);
  if (a !== 0 && (a >= 1e4 || a < 1e-3)) return v.toExponential(digits - 1);
  return Number(v.toPrecision(digits)).toString();
}
