import { describe, expect, it } from "vitest";
import { linearFit } from "../src/fit.js";

describe("linearFit", () => {
  it("recovers an exact line with r2 = 1", () => {
    const xs = [0, 1, 2, 3, 4];
    const fit = linearFit(xs, xs.map((x) => 2 * x + 1));
    expect(fit.slope).toBeCloseTo(2, 12);
    expect(fit.intercept).toBeCloseTo(1, 12);
    expect(fit.r2).toBeCloseTo(1, 12);
  });

  it("matches hand-computed least squares on a bent series", () => {
    // xs (0,1,2), ys (0,1,2.5): slope 1.25, r2 = 75/76
    const fit = linearFit([0, 1, 2], [0, 1, 2.5]);
    expect(fit.slope).toBeCloseTo(1.25, 12);
    expect(fit.intercept).toBeCloseTo(-1 / 12, 12);
    expect(fit.r2).toBeCloseTo(75 / 76, 12);
  });

  it("treats a constant series as a perfect zero-slope fit", () => {
    const fit = linearFit([1, 2, 3], [4, 4, 4]);
    expect(fit.slope).toBe(0);
    expect(fit.intercept).toBe(4);
    expect(fit.r2).toBe(1);
  });

  it("rejects degenerate inputs", () => {
    expect(() => linearFit([1], [2])).toThrow(/at least two/);
    expect(() => linearFit([1, 2], [1, 2, 3])).toThrow(/at least two/);
    expect(() => linearFit([3, 3, 3], [1, 2, 3])).toThrow(/identical/);
  });
});
