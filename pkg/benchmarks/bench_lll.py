#!/usr/bin/env python3
"""Benchmark the compiled LLL kernel against the pure-Python fallback.

Runs `lll_reduce_int` from both backends on identical deterministic inputs,
checks that the outputs agree bit for bit, and prints a timing table.

    python3 benchmarks/bench_lll.py [--reps 3] [--sizes 8:24,12:24,16:16,20:12]
"""

from __future__ import annotations

import argparse
import time

from latrec import _kernel_py
from latrec.genlat import generate

try:
    from latrec import _kernel  # compiled extension, optional
except ImportError:
    _kernel = None


def int_rows(rank: int, bits: int, seed: int) -> list[list[int]]:
    L = generate("uniform-integer", rank, bits, seed=seed)
    return [[int(x) for x in row] for row in L.basis]


def best_of(fn, rows, reps: int) -> tuple[float, tuple]:
    best = float("inf")
    out = None
    for _ in range(reps):
        work = [list(r) for r in rows]
        t0 = time.perf_counter()
        out = fn(work)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--reps", type=int, default=3, help="repetitions, best-of timing")
    ap.add_argument(
        "--sizes",
        default="8:24,12:24,16:16,20:12",
        help="comma-separated rank:bits pairs",
    )
    args = ap.parse_args()
    sizes = [tuple(map(int, part.split(":"))) for part in args.sizes.split(",")]

    if _kernel is None:
        print("compiled kernel not built (run: python3 setup.py build_ext --inplace)")
        print("timing pure-Python backend only\n")

    header = f"{'rank':>5} {'bits':>5} {'pure (ms)':>10}"
    if _kernel is not None:
        header += f" {'compiled (ms)':>14} {'speedup':>8}"
    print(header)
    for rank, bits in sizes:
        rows = int_rows(rank, bits, seed=rank * 1000 + bits)
        t_py, out_py = best_of(_kernel_py.lll_reduce_int, rows, args.reps)
        line = f"{rank:>5} {bits:>5} {t_py * 1e3:>10.2f}"
        if _kernel is not None:
            t_c, out_c = best_of(_kernel.lll_reduce_int, rows, args.reps)
            if out_c != out_py:
                raise SystemExit(f"backend outputs differ at rank={rank} bits={bits}")
            line += f" {t_c * 1e3:>14.2f} {t_py / t_c:>8.2f}x"
        print(line)


if __name__ == "__main__":
    main()
