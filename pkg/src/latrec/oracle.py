"""Exact shortest-vector computation: the rank-k base-case oracle.

Enumeration is depth-first over coefficients w.r.t. an LLL-reduced basis,
zig-zagging each coordinate outward from the real minimizer so pruning needs
no square roots: every bound is an exact rational comparison.  Deterministic:
all attaining vectors are collected and the canonical one (first nonzero
input-basis coefficient positive, lexicographically smallest) is returned.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .bounds import HermiteBound, hermite_bound  # noqa: F401  (bound table lives with the comparison machinery)
from .errors import InvalidParams, InvariantViolation, RankTooLarge
from .exactnum import Rational, rat
from .lattice import Lattice, Sublattice
from .lll import lll_reduce

DEFAULT_MAX_ORACLE_RANK = 14
ENV_MAX_ORACLE_RANK = "LATREC_MAX_ORACLE_RANK"


def max_oracle_rank(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get(ENV_MAX_ORACLE_RANK)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InvalidParams(
                f"{ENV_MAX_ORACLE_RANK} must be an integer, got {env!r}"
            ) from None
    return DEFAULT_MAX_ORACLE_RANK


@dataclass(frozen=True)
class SvpResult:
    vector: tuple[int, ...]  # integer coefficients w.r.t. the *input* basis
    norm_sq: Rational


def _floor(q) -> int:
    return int(q.numerator) // int(q.denominator)


def _nearest(q) -> int:
    # nearest integer, ties toward +inf (any fixed rule works; this one is cheap)
    num, den = int(q.numerator), int(q.denominator)
    return (2 * num + den) // (2 * den)


def svp_exact(L: Lattice, max_rank: int | None = None) -> SvpResult:
    n = L.rank
    cap = max_oracle_rank(max_rank)
    if n > cap:
        raise RankTooLarge(f"exact enumeration is limited to rank {cap}, got rank {n}")

    red = lll_reduce(L)
    c = red.gso.gs_norms_sq  # exact squared GS norms of the reduced basis
    mu = red.gso.mu  # mu[j][i] for i<j: component of b_j along gs direction i
    u_rows = red.transform_int_rows()

    best_sq = c[0]  # ‖b1‖² of the reduced basis: initial radius, attained
    found: list[tuple[int, ...]] = []
    x = [0] * n

    def record(norm_sq) -> None:
        nonlocal best_sq, found
        if norm_sq < best_sq:
            best_sq = norm_sq
            found = [tuple(x)]
        else:
            found.append(tuple(x))

    def descend(i: int, partial, outer_zero: bool) -> None:
        # partial = Σ_{t>i} c_t y_t², exact; prune keeps ties (strict >)
        if i < 0:
            if not outer_zero:  # skip the zero vector
                record(partial)
            return
        s = rat(0)
        for j in range(i + 1, n):
            if x[j]:
                s += mu[j][i] * x[j]
        if outer_zero:
            # first nonzero coefficient (from the top) positive: t ≥ 0 only
            t = 0
            while True:
                y = t + s
                term = c[i] * y * y
                tot = partial + term
                if tot > best_sq:
                    if y > 0:  # |y| grows from here on; below the minimizer keep going
                        break
                else:
                    x[i] = t
                    descend(i - 1, tot, outer_zero and t == 0)
                    x[i] = 0
                t += 1
        else:
            t0 = _nearest(-s)
            for start, step in ((t0, 1), (t0 - 1, -1)):
                t = start
                while True:
                    y = t + s
                    term = c[i] * y * y
                    tot = partial + term
                    if tot > best_sq:
                        if t != t0:  # past the minimizer in this direction
                            break
                    else:
                        x[i] = t
                        descend(i - 1, tot, False)
                        x[i] = 0
                    t += step

    descend(n - 1, rat(0), True)
    if not found:
        raise InvariantViolation("enumeration found no vector within the reduced-b1 radius")

    candidates = []
    for z in found:
        w = [0] * n
        for i, zi in enumerate(z):
            if zi:
                row = u_rows[i]
                for j in range(n):
                    w[j] += zi * row[j]
        lead = next((v for v in w if v != 0), 0)
        if lead < 0:
            w = [-v for v in w]
        candidates.append(tuple(w))
    return SvpResult(vector=min(candidates), norm_sq=best_sq)


def hsvp_oracle(L: Lattice, max_rank: int | None = None) -> Sublattice:
    """Rank-1 primitive sublattice generated by an exact shortest vector."""
    res = svp_exact(L, max_rank)
    if math.gcd(*res.vector) != 1:
        # a strictly shorter vector would exist; enumeration being exact bars this
        raise InvariantViolation(
            "shortest vector came out imprimitive", {"coeffs": res.vector}
        )
    return Sublattice(L, (res.vector,))
