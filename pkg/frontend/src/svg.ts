/**
 * Deterministic SVG rendering of tradeoff curves: approximation-factor
 * exponent (log2 gamma) against oracle budget on a log-scale axis, one
 * polyline per series, plus the horizontal large-budget asymptote when the
 * fixed-rank parameters are supplied.  Fixed style, no timestamps: the same
 * inputs always produce byte-identical output.
 */

import { CurveSeries } from "./csv";
import { asymptoteLog2Gamma } from "./hermite";

export interface RenderOptions {
  /** Ambient dimension for the asymptote line (drawn only with `k`). */
  n?: number;
  /** Fixed oracle rank for the asymptote line (drawn only with `n`). */
  k?: number;
  width?: number;
  height?: number;
}

const PALETTE = ["#1f77b4", "#d62728", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"];
const ASYMPTOTE_COLOR = "#2ca02c";

const fmt = (x: number): string => x.toFixed(2);

/** Budget 0 sits one octave below budget 1 on the log axis. */
const logX = (budget: number): number => (budget === 0 ? -1 : Math.log2(budget));

function budgetTicks(maxBudget: number, hasZero: boolean): number[] {
  let ticks: number[] = [];
  for (let v = 1; v <= maxBudget; v *= 8) ticks.push(v);
  if (ticks.length < 3) {
    ticks = [];
    for (let v = 1; v <= maxBudget; v *= 2) ticks.push(v);
  }
  return hasZero ? [0, ...ticks] : ticks;
}

function valueTicks(lo: number, hi: number): { ticks: number[]; decimals: number } {
  const span = hi - lo || 1;
  const raw = span / 6;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = 10 * mag;
  for (const m of [1, 2, 5]) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(v);
  }
  const decimals = Math.max(0, -Math.floor(Math.log10(step)));
  return { ticks, decimals };
}

export function renderSvg(seriesList: CurveSeries[], opts: RenderOptions = {}): string {
  if (seriesList.length === 0) {
    throw new Error("nothing to render: no curve series");
  }
  const width = opts.width ?? 720;
  const height = opts.height ?? 480;
  const margin = { left: 64, right: 20, top: 40, bottom: 56 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;

  const drawAsymptote = opts.n !== undefined && opts.k !== undefined;
  const asymptote = drawAsymptote ? asymptoteLog2Gamma(opts.n!, opts.k!) : undefined;

  const budgets = seriesList.flatMap((s) => s.rows.map((r) => r.budget));
  const values = seriesList.flatMap((s) => s.rows.map((r) => r.log2Gamma));
  if (asymptote !== undefined) values.push(asymptote);

  let xLo = Math.min(...budgets.map(logX));
  let xHi = Math.max(...budgets.map(logX));
  if (xLo === xHi) {
    xLo -= 1;
    xHi += 1;
  }
  let yLo = Math.min(...values);
  let yHi = Math.max(...values);
  const yPad = 0.05 * (yHi - yLo || 1);
  yLo -= yPad;
  yHi += yPad;

  const sx = (budget: number): number =>
    margin.left + ((logX(budget) - xLo) / (xHi - xLo)) * plotW;
  const sy = (v: number): number => margin.top + ((yHi - v) / (yHi - yLo)) * plotH;

  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
  );
  out.push(`<rect width="${width}" height="${height}" fill="#ffffff"/>`);

  const title = opts.n !== undefined ? `density tradeoff, n=${opts.n}` : "density tradeoff";
  out.push(
    `<text x="${fmt(width / 2)}" y="24" text-anchor="middle" font-size="16">${title}</text>`,
  );

  // gridlines + value axis
  const vt = valueTicks(yLo, yHi);
  for (const v of vt.ticks) {
    const y = sy(v);
    out.push(
      `<line x1="${fmt(margin.left)}" y1="${fmt(y)}" x2="${fmt(width - margin.right)}" ` +
        `y2="${fmt(y)}" stroke="#dddddd" stroke-width="1"/>`,
    );
    out.push(
      `<text x="${fmt(margin.left - 8)}" y="${fmt(y + 4)}" text-anchor="end" ` +
        `font-size="12">${v.toFixed(vt.decimals)}</text>`,
    );
  }

  // budget axis (log scale)
  const hasZero = budgets.some((b) => b === 0);
  for (const b of budgetTicks(Math.max(...budgets), hasZero)) {
    const x = sx(b);
    out.push(
      `<line x1="${fmt(x)}" y1="${fmt(height - margin.bottom)}" x2="${fmt(x)}" ` +
        `y2="${fmt(height - margin.bottom + 5)}" stroke="#333333" stroke-width="1"/>`,
    );
    out.push(
      `<text x="${fmt(x)}" y="${fmt(height - margin.bottom + 20)}" text-anchor="middle" ` +
        `font-size="12">${b}</text>`,
    );
  }
  out.push(
    `<line x1="${fmt(margin.left)}" y1="${fmt(height - margin.bottom)}" ` +
      `x2="${fmt(width - margin.right)}" y2="${fmt(height - margin.bottom)}" ` +
      `stroke="#333333" stroke-width="1"/>`,
  );
  out.push(
    `<line x1="${fmt(margin.left)}" y1="${fmt(margin.top)}" x2="${fmt(margin.left)}" ` +
      `y2="${fmt(height - margin.bottom)}" stroke="#333333" stroke-width="1"/>`,
  );
  out.push(
    `<text x="${fmt(margin.left + plotW / 2)}" y="${fmt(height - 12)}" text-anchor="middle" ` +
      `font-size="13">oracle budget C (log scale)</text>`,
  );
  out.push(
    `<text x="18" y="${fmt(margin.top + plotH / 2)}" text-anchor="middle" font-size="13" ` +
      `transform="rotate(-90 18 ${fmt(margin.top + plotH / 2)})">log2 gamma bound</text>`,
  );

  if (asymptote !== undefined) {
    const y = sy(asymptote);
    out.push(
      `<line x1="${fmt(margin.left)}" y1="${fmt(y)}" x2="${fmt(width - margin.right)}" ` +
        `y2="${fmt(y)}" stroke="${ASYMPTOTE_COLOR}" stroke-width="1.5" ` +
        `stroke-dasharray="2 4" class="asymptote"/>`,
    );
  }

  seriesList.forEach((s, idx) => {
    const color = PALETTE[idx % PALETTE.length];
    const pts = s.rows.map((r) => `${fmt(sx(r.budget))},${fmt(sy(r.log2Gamma))}`).join(" ");
    out.push(
      `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="1.5"/>`,
    );
    for (const r of s.rows) {
      out.push(
        `<circle cx="${fmt(sx(r.budget))}" cy="${fmt(sy(r.log2Gamma))}" r="2.5" ` +
          `fill="${color}"/>`,
      );
    }
  });

  // legend, top right
  const legend: Array<{ color: string; dash: string; label: string }> = seriesList.map(
    (s, idx) => ({ color: PALETTE[idx % PALETTE.length], dash: "", label: s.label }),
  );
  if (asymptote !== undefined) {
    legend.push({
      color: ASYMPTOTE_COLOR,
      dash: ' stroke-dasharray="2 4"',
      label: `limit (n-1)/(2(k-1)) log2 delta_k = ${asymptote.toFixed(3)}`,
    });
  }
  legend.forEach((item, i) => {
    const y = margin.top + 14 + 18 * i;
    const x = width - margin.right - 270;
    out.push(
      `<line x1="${fmt(x)}" y1="${fmt(y - 4)}" x2="${fmt(x + 26)}" y2="${fmt(y - 4)}" ` +
        `stroke="${item.color}" stroke-width="1.5"${item.dash}/>`,
    );
    out.push(`<text x="${fmt(x + 32)}" y="${fmt(y)}" font-size="12">${item.label}</text>`);
  });

  out.push("</svg>");
  return out.join("\n") + "\n";
}
