/**
 * Upper bounds on Hermite's constant, matching the core package's tables:
 * the exact values for rank <= 8 and Blichfeldt's bound
 * delta_k^k <= (2/pi)^k * Gamma(2 + k/2)^2 above that.
 */

/** delta_k^k as [numerator, denominator] for k = 1..8 (known exactly). */
const DELTA_POW_EXACT: ReadonlyArray<readonly [number, number]> = [
  [1, 1],
  [4, 3],
  [2, 1],
  [4, 1],
  [8, 1],
  [64, 3],
  [64, 1],
  [256, 1],
];

function log2Factorial(m: number): number {
  let s = 0;
  for (let i = 2; i <= m; i++) s += Math.log2(i);
  return s;
}

const LOG2_PI = Math.log2(Math.PI);

/** Upper bound on log2 of Hermite's constant delta_k. */
export function log2DeltaK(k: number): number {
  if (!Number.isInteger(k) || k < 1) {
    throw new Error(`rank must be a positive integer, got ${k}`);
  }
  if (k <= 8) {
    const [num, den] = DELTA_POW_EXACT[k - 1];
    return (Math.log2(num) - Math.log2(den)) / k;
  }
  if (k % 2 === 0) {
    // Gamma(2 + k/2) = (k/2 + 1)!
    return 1 + (2 / k) * log2Factorial(k / 2 + 1) - LOG2_PI;
  }
  // odd k: Gamma(2 + k/2) = Gamma(j + 1/2) = (2j)! sqrt(pi) / (4^j j!), j = (k+3)/2
  const j = (k + 3) / 2;
  const g = log2Factorial(2 * j) - 2 * j - log2Factorial(j);
  return 1 + (2 / k) * g - ((k - 1) / k) * LOG2_PI;
}

/**
 * Large-budget limit of the fixed-rank tradeoff curve for a rank-1 target:
 * (n - 1) / (2 (k - 1)) * log2(delta_k).
 */
export function asymptoteLog2Gamma(n: number, k: number): number {
  if (!Number.isInteger(n) || n < 2) throw new Error(`invalid dimension ${n}`);
  if (!Number.isInteger(k) || k < 2) throw new Error(`invalid oracle rank ${k}`);
  return ((n - 1) / (2 * (k - 1))) * log2DeltaK(k);
}
