/**
 * Parser for the tradeoff-curve CSV emitted by `latrec curve`.
 *
 * Schema (one header line, then data rows):
 *   variant,n,k,ell,budget,log2_gamma
 * with variant in {fixed, variable}; k is empty for the variable-rank
 * variant and a positive integer otherwise.
 *
 * Parsing also enforces the curve invariants -- budgets strictly ascending
 * and log2_gamma nonincreasing within a series -- so a renderer can assume
 * well-formed input and anything else fails loudly with a nonzero exit.
 */

export interface CurveRow {
  variant: "fixed" | "variable";
  n: number;
  k: number | null;
  ell: number;
  budget: number;
  log2Gamma: number;
}

export interface CurveSeries {
  variant: "fixed" | "variable";
  n: number;
  k: number | null;
  ell: number;
  label: string;
  rows: CurveRow[];
}

export const HEADER = "variant,n,k,ell,budget,log2_gamma";

function intField(raw: string, name: string, where: string): number {
  if (!/^-?\d+$/.test(raw)) {
    throw new Error(`${where}: field ${name} is not an integer: ${JSON.stringify(raw)}`);
  }
  return Number(raw);
}

export function parseCurveCsv(text: string, source: string): CurveSeries[] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error(`${source}: empty CSV`);
  }
  if (lines[0] !== HEADER) {
    throw new Error(
      `${source}: bad header ${JSON.stringify(lines[0])}; expected ${JSON.stringify(HEADER)}`,
    );
  }
  if (lines.length === 1) {
    throw new Error(`${source}: no data rows`);
  }

  const series = new Map<string, CurveSeries>();
  for (let i = 1; i < lines.length; i++) {
    const where = `${source}:${i + 1}`;
    const parts = lines[i].split(",");
    if (parts.length !== 6) {
      throw new Error(`${where}: expected 6 fields, got ${parts.length}`);
    }
    const [variantRaw, nRaw, kRaw, ellRaw, budgetRaw, gammaRaw] = parts;
    if (variantRaw !== "fixed" && variantRaw !== "variable") {
      throw new Error(`${where}: unknown variant ${JSON.stringify(variantRaw)}`);
    }
    const variant = variantRaw;
    const n = intField(nRaw, "n", where);
    const k = kRaw === "" ? null : intField(kRaw, "k", where);
    if (variant === "fixed" && k === null) {
      throw new Error(`${where}: fixed variant requires a k value`);
    }
    if (variant === "variable" && k !== null) {
      throw new Error(`${where}: variable variant must leave k empty`);
    }
    const ell = intField(ellRaw, "ell", where);
    const budget = intField(budgetRaw, "budget", where);
    if (n < 1 || ell < 1 || ell > n || budget < 0) {
      throw new Error(`${where}: out-of-range row (n=${n}, ell=${ell}, budget=${budget})`);
    }
    const log2Gamma = Number(gammaRaw);
    if (gammaRaw.trim() === "" || !Number.isFinite(log2Gamma)) {
      throw new Error(`${where}: log2_gamma is not a finite number: ${JSON.stringify(gammaRaw)}`);
    }

    const key = `${variant}|${k ?? ""}|${n}|${ell}`;
    let s = series.get(key);
    if (s === undefined) {
      const label = variant === "fixed" ? `fixed k=${k}` : "variable k";
      s = { variant, n, k, ell, label, rows: [] };
      series.set(key, s);
    }
    s.rows.push({ variant, n, k, ell, budget, log2Gamma });
  }

  for (const s of series.values()) {
    for (let i = 1; i < s.rows.length; i++) {
      const a = s.rows[i - 1];
      const b = s.rows[i];
      if (b.budget <= a.budget) {
        throw new Error(
          `${source}: budgets not ascending in series ${s.label} (${a.budget} then ${b.budget})`,
        );
      }
      if (b.log2Gamma > a.log2Gamma) {
        throw new Error(
          `${source}: log2_gamma increases in series ${s.label} at budget ${b.budget}`,
        );
      }
    }
  }
  return [...series.values()];
}
