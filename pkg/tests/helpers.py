"""Shared test utilities.

Everything in here is deliberately independent of the package internals it is
used to check: determinants, Gram-Schmidt data and shortest vectors are
recomputed from scratch with plain `fractions.Fraction`, and the call-count
twins re-derive the recursion trees from the documented control flow rather
than calling into the engine.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import product

from latrec.errors import DegenerateBasis
from latrec.exactnum import RatMatrix, rat
from latrec.lattice import Lattice, Sublattice, primitivize

# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def rand_int_rows(rng: random.Random, n: int, d: int | None = None, span: int = 9):
    d = n if d is None else d
    return [[rng.randint(-span, span) for _ in range(d)] for _ in range(n)]


def rand_lattice(rng: random.Random, n: int, d: int | None = None, span: int = 9,
                 denom: int = 1) -> Lattice:
    """Full-rank random lattice; retries on singular draws."""
    while True:
        rows = rand_int_rows(rng, n, d, span)
        if denom > 1:
            rows = [[rat(x, rng.randint(1, denom)) for x in row] for row in rows]
        try:
            return Lattice(RatMatrix(rows))
        except DegenerateBasis:
            continue


def rand_primitive_sub(rng: random.Random, L: Lattice, m: int) -> Sublattice:
    while True:
        Z = [[rng.randint(-3, 3) for _ in range(L.rank)] for _ in range(m)]
        try:
            return primitivize(Sublattice(L, tuple(tuple(r) for r in Z)))
        except DegenerateBasis:
            continue


# ---------------------------------------------------------------------------
# independent exact linear algebra (plain Fractions, no latrec imports used)
# ---------------------------------------------------------------------------


def frac_rows(M) -> list[list[Fraction]]:
    """Copy a RatMatrix / row iterable into Fraction rows."""
    return [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in M]


def frac_det(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction Gaussian elimination with partial pivoting."""
    a = [row[:] for row in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def frac_gram(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    return [[sum(x * y for x, y in zip(u, v)) for v in rows] for u in rows]


def frac_gram_det(rows: list[list[Fraction]]) -> Fraction:
    return frac_det(frac_gram(rows))


def frac_inverse(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        assert piv is not None, "singular matrix in test helper"
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def frac_gso(rows: list[list[Fraction]]):
    """(gs_rows, mu, gs_norms_sq) by the textbook projection recurrence."""
    gs: list[list[Fraction]] = []
    mu: list[list[Fraction]] = []
    norms: list[Fraction] = []
    for i, b in enumerate(rows):
        cur = [Fraction(x) for x in b]
        murow = []
        for j in range(i):
            m = sum(x * y for x, y in zip(b, gs[j])) / norms[j]
            murow.append(m)
            cur = [x - m * y for x, y in zip(cur, gs[j])]
        gs.append(cur)
        mu.append(murow)
        norms.append(sum(x * x for x in cur))
    return gs, mu, norms


def check_lll_conditions(rows, delta_num: int = 3, delta_den: int = 4) -> bool:
    """Size-reduction and the Lovász condition, re-derived from scratch."""
    fr = frac_rows(rows) if not isinstance(rows[0][0], Fraction) else rows
    _gs, mu, norms = frac_gso(fr)
    for i in range(1, len(fr)):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for i in range(len(fr) - 1):
        m = mu[i + 1][i]
        if delta_den * (norms[i + 1] + m * m * norms[i]) < delta_num * norms[i]:
            return False
    return True


# ---------------------------------------------------------------------------
# independent shortest-vector search (ellipsoid coefficient box, no pruning)
# ---------------------------------------------------------------------------


def brute_force_svp(L: Lattice, cell_limit: int = 400_000) -> Fraction | None:
    """Exact lambda_1^2 by full enumeration of a provably sufficient box.

    Any v = zB with ||v||^2 <= U satisfies |z_i|^2 <= U * (Q^{-1})_{ii} for
    Q = B B^T (axis bound of the ellipsoid z Q z^T <= U); U is the smallest
    input row norm, so the minimum is inside the box.  Returns None when the
    box would exceed cell_limit cells (skewed draw: resample instead).
    """
    B = frac_rows(L.basis)
    n = len(B)
    Q = frac_gram(B)
    U = min(Q[i][i] for i in range(n))
    Qinv = frac_inverse(Q)
    box = []
    cells = 1
    for i in range(n):
        t = U * Qinv[i][i]
        b = math.isqrt(t.numerator // t.denominator) + 1
        box.append(b)
        cells *= 2 * b + 1
    if cells > cell_limit:
        return None
    best = U
    ranges = [range(-b, b + 1) for b in box]
    # fix the first nonzero coefficient positive: halves the search space
    for z in product(*ranges):
        first = next((c for c in z if c != 0), 0)
        if first <= 0:
            continue
        norm = Fraction(0)
        for i in range(n):
            if z[i]:
                norm += Q[i][i] * z[i] * z[i]
                for j in range(i + 1, n):
                    if z[j]:
                        norm += 2 * Q[i][j] * z[i] * z[j]
        if norm < best:
            best = norm
    return best


# ---------------------------------------------------------------------------
# call-count twins (re-derived from the documented branch structure)
# ---------------------------------------------------------------------------


def hsvp_oracle_calls(n: int, k: int, tau: int, _memo={}) -> int:
    """Twin of the rank-1 recursion: tau=0 -> LLL, n=k -> one oracle call,
    else one subtree at (n, tau-1) plus one at (n-1, tau)."""
    key = (n, k, tau)
    if key in _memo:
        return _memo[key]
    if tau == 0:
        r = 0
    elif n == k:
        r = 1
    else:
        r = hsvp_oracle_calls(n, k, tau - 1) + hsvp_oracle_calls(n - 1, k, tau)
    _memo[key] = r
    return r


class DspCounts:
    __slots__ = ("nodes", "oracle", "lll", "dual")

    def __init__(self, nodes=0, oracle=0, lll=0, dual=0):
        self.nodes, self.oracle, self.lll, self.dual = nodes, oracle, lll, dual

    def __add__(self, o):
        return DspCounts(self.nodes + o.nodes, self.oracle + o.oracle,
                         self.lll + o.lll, self.dual + o.dual)

    def as_tuple(self):
        return (self.oracle, self.lll, self.dual)


def _ell_star(n: int, k: int) -> int:
    return -((k - n) // 20)  # ceil((n-k)/20)


def dsp_dsp_counts(n: int, ell: int, tau: int, k: int, after_dual: bool = False,
                   _memo={}) -> DspCounts:
    key = (n, ell, tau, k, after_dual)
    if key in _memo:
        return _memo[key]
    me = DspCounts(nodes=1)
    if 2 * ell > n:
        assert not after_dual, "twin reached a dual-after-dual state"
        me.dual = 1
        r = me + dsp_dsp_counts(n, n - ell, tau, k, True)
    elif n == k:
        me.oracle = me.lll = 1
        r = me
    elif tau == 0:
        me.lll = 1
        r = me
    else:
        r = (me + dsp_dsp_counts(n, _ell_star(n, k), tau - 1, k)
             + dsp_dsp_counts(n - 1, ell, tau, k))
    _memo[key] = r
    return r


def dsp_hsvp_duality_fires(n: int, ell: int, k: int) -> bool:
    cond1 = ell >= 2 and 5 * ell > n - k and 2 * ell < n
    if n - k <= 10:
        cond2 = ell >= n - 1
    else:
        cond2 = 10 * ell >= 9 * n + k
    return cond1 or cond2


def dsp_hsvp_counts(n: int, ell: int, tau: int, k: int, after_dual: bool = False,
                    _memo={}) -> DspCounts:
    key = (n, ell, tau, k, after_dual)
    if key in _memo:
        return _memo[key]
    me = DspCounts(nodes=1)
    if dsp_hsvp_duality_fires(n, ell, k):
        assert not after_dual, "twin reached a dual-after-dual state"
        me.dual = 1
        r = me + dsp_hsvp_counts(n, n - ell, tau, k, True)
    elif n == k and ell == 1:
        me.oracle = me.lll = 1
        r = me
    elif tau == 0:
        me.lll = 1
        r = me
    else:
        b = 1 if 2 * ell < n else 0
        r = (me + dsp_hsvp_counts(n, _ell_star(n, k), tau - b, k)
             + dsp_hsvp_counts(n - 1, ell, tau, k))
    _memo[key] = r
    return r


# ---------------------------------------------------------------------------
# exhaustive recursion-tree enumeration for the planner (criterion twin)
# ---------------------------------------------------------------------------


def exhaustive_plan_value(n: int, ell: int, budget: int, budgets, k: int,
                          can_dual: bool = True, _memo=None) -> float:
    """Minimum over *all* recursion trees in the fixed-k template.

    Evaluates trees bottom-up with the planner's own value functions (the
    spec pins those floats); the minimum over the tree set equals the DP
    value because the combining step is monotone in both children.
    """
    from latrec.planner import combine, lll_log2, svp_log2

    if _memo is None:
        _memo = {}
    key = (n, ell, budget, can_dual)
    if key in _memo:
        return _memo[key]
    cands = [lll_log2(n, ell)]
    if n == k and ell == 1 and budget >= 1:
        cands.append(svp_log2(k))
    cap = n - max(ell + 1, k)
    for ls in range(1, cap + 1):
        for c_star, c_left in budgets.splits(budget):
            left = exhaustive_plan_value(n - ls, ell, c_left, budgets, k, True, _memo)
            right = exhaustive_plan_value(n, ls, c_star, budgets, k, True, _memo)
            cands.append(combine(left, right, ell, n - ls))
    if can_dual and 1 <= n - ell < n:
        cands.append(exhaustive_plan_value(n, n - ell, budget, budgets, k, False, _memo))
    v = min(cands)
    _memo[key] = v
    return v


# ---------------------------------------------------------------------------
# density comparisons
# ---------------------------------------------------------------------------


def gamma_sq_le_with_slack(sub_a: Sublattice, sub_b: Sublattice, slack) -> bool:
    """gamma(A)^2 <= slack * gamma(B)^2, exactly, via cross-powering.

    Both ranks must agree; the parents may differ (that is the point: the
    lifted solution is compared against the one found on the rounded basis).
    """
    assert sub_a.rank == sub_b.rank
    na, nb = sub_a.parent.rank, sub_b.parent.rank
    ell = sub_a.rank
    s = rat(slack)
    lhs = sub_a.det_sq() ** (na * nb) * sub_b.parent.det_sq() ** (ell * na)
    rhs = (s ** (na * nb)) * (sub_b.det_sq() ** (na * nb)) * sub_a.parent.det_sq() ** (ell * nb)
    return lhs <= rhs
