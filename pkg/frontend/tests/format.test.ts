import { describe, expect, it } from "vitest";

import { displayBracket, displayNumber, shortNumber } from "../src/format";
import { quadResultView } from "../src/ui";
import type { ModulusResult } from "../src/types";

describe("displayNumber", () => {
  it("shows every digit of the API double, nothing else", () => {
    // values as they appear in real API JSON payloads
    expect(displayNumber(1.9999999999999996)).toBe("1.9999999999999996");
    expect(displayNumber(1.2792615711710065)).toBe("1.2792615711710065");
    expect(displayNumber(2)).toBe("2");
  });

  it("round-trips through JSON parsing losslessly", () => {
    const wire = '{"value": 0.6929938907297931}';
    const parsed = JSON.parse(wire) as { value: number };
    expect(displayNumber(parsed.value)).toBe("0.6929938907297931");
  });

  it("handles missing values", () => {
    expect(displayNumber(null)).toBe("–");
    expect(displayNumber(Number.NaN)).toBe("–");
  });
});

describe("quadResultView", () => {
  const res: ModulusResult = {
    value: 1.9999999999999996,
    lower: 1.9999999999979996,
    upper: 2.0000000000019997,
    dofs: 56,
    levels: 0,
    converged: true,
  };

  it("headline carries the exact API value", () => {
    const view = quadResultView(res);
    expect(view.headline).toBe("modulus 1.9999999999999996");
    expect(view.lines[0]).toBe(`bracket ${displayBracket(res.lower, res.upper)}`);
    expect(view.lines[0]).toContain("1.9999999999979996");
  });

  it("marks unconverged results", () => {
    const view = quadResultView({ ...res, converged: false });
    expect(view.lines[1]).toContain("budget exhausted");
  });
});

describe("shortNumber", () => {
  it("keeps small magnitudes readable", () => {
    expect(shortNumber(0.693147)).toBe("0.6931");
    expect(shortNumber(1234.5)).toBe("1235");
  });

  it("switches to exponent form for extremes", () => {
    expect(shortNumber(1e-9)).toBe("1.000e-9");
  });
});
