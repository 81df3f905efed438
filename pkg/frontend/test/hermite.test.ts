import { describe, expect, it } from "vitest";

import { asymptoteLog2Gamma, log2DeltaK } from "../src/hermite";

// Reference values computed by the core package's exact rational tables
// (latrec.bounds.hermite_bound); agreement is ~1e-13, we assert 1e-9.
const REFERENCE: Array<[number, number]> = [
  [2, 0.2075187496394255],
  [3, 0.33333333333333537],
  [4, 0.5000000000000022],
  [5, 0.6000000000000023],
  [6, 0.7358395832131437],
  [7, 0.8571428571428599],
  [8, 1.0000000000000027],
  [9, 1.163915026634971],
  [10, 1.246874489793847],
  [12, 1.3983718735924549],
  [30, 2.298513235186741],
];

describe("log2DeltaK", () => {
  it.each(REFERENCE)("matches the core package for k=%i", (k, want) => {
    expect(Math.abs(log2DeltaK(k) - want)).toBeLessThan(1e-9);
  });

  it("is increasing in the rank", () => {
    for (let k = 2; k < 40; k++) {
      expect(log2DeltaK(k + 1)).toBeGreaterThan(log2DeltaK(k));
    }
  });

  it("rejects non-positive and fractional ranks", () => {
    expect(() => log2DeltaK(0)).toThrow();
    expect(() => log2DeltaK(-3)).toThrow();
    expect(() => log2DeltaK(2.5)).toThrow();
  });
});

describe("asymptoteLog2Gamma", () => {
  it("pins the n=50, k=10 limit used by the demo figure", () => {
    expect(Math.abs(asymptoteLog2Gamma(50, 10) - 3.394269444438806)).toBeLessThan(1e-9);
  });

  it("rejects degenerate parameters", () => {
    expect(() => asymptoteLog2Gamma(1, 10)).toThrow();
    expect(() => asymptoteLog2Gamma(50, 1)).toThrow();
  });
});
