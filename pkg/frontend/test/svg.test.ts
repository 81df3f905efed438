import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { parseCurveCsv } from "../src/csv";
import { renderSvg } from "../src/svg";

const FIXTURE = fileURLToPath(new URL("./fixtures/curve_n50_k10.csv", import.meta.url));
const fixtureSeries = () => parseCurveCsv(readFileSync(FIXTURE, "utf8"), "fixture");

describe("renderSvg", () => {
  it("is deterministic: two renders of the same input are identical", () => {
    const a = renderSvg(fixtureSeries(), { n: 50, k: 10 });
    const b = renderSvg(fixtureSeries(), { n: 50, k: 10 });
    expect(a).toBe(b);
    expect(a.startsWith("<svg ")).toBe(true);
    expect(a.trimEnd().endsWith("</svg>")).toBe(true);
  });

  it("draws one polyline per series and one marker per row", () => {
    const series = fixtureSeries();
    const svg = renderSvg(series, { n: 50, k: 10 });
    expect(svg.match(/<polyline /g)).toHaveLength(series.length);
    expect(svg.match(/<circle /g)).toHaveLength(series[0].rows.length);
  });

  it("draws the curve monotonically: x advances, y never moves up", () => {
    // SVG y grows downward, so a nonincreasing series must have
    // nondecreasing y coordinates left to right.
    const svg = renderSvg(fixtureSeries(), { n: 50, k: 10 });
    const m = svg.match(/<polyline points="([^"]+)"/);
    expect(m).not.toBeNull();
    const pts = m![1].split(" ").map((p) => p.split(",").map(Number));
    for (let i = 1; i < pts.length; i++) {
      expect(pts[i][0]).toBeGreaterThan(pts[i - 1][0]);
      expect(pts[i][1]).toBeGreaterThanOrEqual(pts[i - 1][1]);
    }
  });

  it("includes the dotted asymptote only when n and k are given", () => {
    expect(renderSvg(fixtureSeries(), { n: 50, k: 10 })).toContain('class="asymptote"');
    expect(renderSvg(fixtureSeries(), {})).not.toContain('class="asymptote"');
  });

  it("places the asymptote line inside the plot area", () => {
    const svg = renderSvg(fixtureSeries(), { n: 50, k: 10 });
    const m = svg.match(/<line [^>]*class="asymptote"\/>/);
    expect(m).not.toBeNull();
    const y = Number(m![0].match(/y1="([\d.]+)"/)![1]);
    expect(y).toBeGreaterThan(40); // below the title band
    expect(y).toBeLessThan(480 - 56); // above the budget axis
  });

  it("refuses to render an empty series list", () => {
    expect(() => renderSvg([], {})).toThrow(/nothing to render/);
  });

  it("contains no timestamps or other run-dependent text", () => {
    const svg = renderSvg(fixtureSeries(), { n: 50, k: 10 });
    expect(svg).not.toMatch(/\b20\d\d-\d\d-\d\d\b/);
    expect(svg).not.toMatch(/date|time/i);
  });
});
