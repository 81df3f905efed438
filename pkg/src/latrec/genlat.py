"""Seeded random lattice families for experiments and verification runs.

Two families cover the two regimes the reduction machinery cares about:

* ``uniform-integer`` — dense integer bases with entries drawn uniformly
  from ``[-2^bits, 2^bits]``.  Singular draws are rejected and redrawn, so
  the returned basis always has full rank.
* ``qary-like`` — block bases of the shape ``[[q*I, 0], [A, I]]`` with
  ``q = 2^bits + 1`` and ``A`` uniform mod q.  These are triangular with
  determinant exactly ``q^(rank//2)``, which makes density bookkeeping in
  downstream checks trivial to pin.

All randomness flows through a single ``random.Random`` instance (CPython's
Mersenne Twister, mt19937) so that a seed fully determines the output bytes.
"""

from __future__ import annotations

import random

from .errors import DegenerateBasis, InvalidParams
from .exactnum import rat
from .lattice import Lattice

KINDS = ("uniform-integer", "qary-like")


def uniform_integer(rank: int, bits: int, rng: random.Random) -> Lattice:
    """Full-rank basis with entries uniform in [-2^bits, 2^bits]."""
    if rank < 1:
        raise InvalidParams(f"rank must be >= 1, got {rank}")
    if bits < 1:
        raise InvalidParams(f"bits must be >= 1, got {bits}")
    hi = 1 << bits
    while True:
        rows = [[rng.randint(-hi, hi) for _ in range(rank)] for _ in range(rank)]
        try:
            return Lattice([[rat(x) for x in row] for row in rows])
        except DegenerateBasis:
            continue  # singular draw; redraw


def qary_like(rank: int, bits: int, rng: random.Random) -> Lattice:
    """Block basis [[q*I, 0], [A, I]] with q = 2^bits + 1, det = q^(rank//2)."""
    if rank < 2:
        raise InvalidParams(f"rank must be >= 2 for qary-like, got {rank}")
    if bits < 1:
        raise InvalidParams(f"bits must be >= 1, got {bits}")
    q = (1 << bits) + 1
    m = rank // 2
    rows = []
    for i in range(m):
        row = [0] * rank
        row[i] = q
        rows.append(row)
    for i in range(rank - m):
        row = [rng.randrange(q) for _ in range(m)] + [0] * (rank - m)
        row[m + i] = 1
        rows.append(row)
    return Lattice([[rat(x) for x in row] for row in rows])


def generate(kind: str, rank: int, bits: int, seed: int) -> Lattice:
    """Dispatch on family name; the seed pins the basis byte-for-byte."""
    if kind not in KINDS:
        raise InvalidParams(f"unknown lattice kind {kind!r}; choose from {KINDS}")
    rng = random.Random(seed)
    if kind == "uniform-integer":
        return uniform_integer(rank, bits, rng)
    return qary_like(rank, bits, rng)
