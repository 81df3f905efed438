/**
 * Command-line entry point.
 *
 *   latrec-plot render --csv PATH [--csv PATH ...] [--n N --k K] --out OUT.svg
 *
 * Reads one or more tradeoff-curve CSV files (the `latrec curve` schema),
 * overlays every series they contain, and writes a deterministic SVG.  When
 * both --n and --k are given, the fixed-rank large-budget asymptote is drawn
 * as a dotted horizontal line.
 *
 * Exit codes: 0 success; 1 unreadable or malformed input; 2 usage error.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { parseCurveCsv, CurveSeries } from "./csv";
import { renderSvg } from "./svg";

const USAGE =
  "usage: latrec-plot render --csv PATH [--csv PATH ...] [--n N --k K] --out OUT.svg";

interface Args {
  csv: string[];
  n?: number;
  k?: number;
  out: string;
}

function usageError(msg: string): never {
  throw new UsageError(msg);
}

class UsageError extends Error {}

function parseArgs(argv: string[]): Args {
  if (argv.length === 0) usageError("missing command");
  if (argv[0] !== "render") usageError(`unknown command ${JSON.stringify(argv[0])}`);
  const csv: string[] = [];
  let n: number | undefined;
  let k: number | undefined;
  let out: string | undefined;
  let i = 1;
  const next = (flag: string): string => {
    i += 1;
    if (i >= argv.length) usageError(`${flag} requires a value`);
    return argv[i];
  };
  const intArg = (flag: string): number => {
    const raw = next(flag);
    if (!/^\d+$/.test(raw)) usageError(`${flag} must be a positive integer, got ${raw}`);
    return Number(raw);
  };
  for (; i < argv.length; i++) {
    switch (argv[i]) {
      case "--csv":
        csv.push(next("--csv"));
        break;
      case "--n":
        n = intArg("--n");
        break;
      case "--k":
        k = intArg("--k");
        break;
      case "--out":
        out = next("--out");
        break;
      default:
        usageError(`unknown argument ${JSON.stringify(argv[i])}`);
    }
  }
  if (csv.length === 0) usageError("at least one --csv is required");
  if (out === undefined) usageError("--out is required");
  if ((n === undefined) !== (k === undefined)) {
    usageError("--n and --k must be given together (they define the asymptote)");
  }
  return { csv, n, k, out };
}

/** Runs the CLI on an argv slice (no program/script prefix); returns the exit code. */
export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (e) {
    if (e instanceof UsageError) {
      process.stderr.write(`error: ${e.message}\n${USAGE}\n`);
      return 2;
    }
    throw e;
  }
  try {
    const series: CurveSeries[] = [];
    for (const path of args.csv) {
      series.push(...parseCurveCsv(readFileSync(path, "utf8"), path));
    }
    const svg = renderSvg(series, { n: args.n, k: args.k });
    writeFileSync(args.out, svg);
  } catch (e) {
    const msg = e instanceof Error ? e.message : String(e);
    process.stderr.write(`error: ${msg}\n`);
    return 1;
  }
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
