"""Dynamic-programming search for optimal recursive reduction trees.

The table value V(n, ell, C) is the best provable log2 density bound for a
rank-ell sublattice of a rank-n lattice using at most C units of oracle budget,
minimizing over the recursion template: an optional duality step (free,
ell -> n-ell), then either a leaf (LLL at any budget; the rank-k oracle when
available) or a recursive step choosing a dual-sublattice rank ell* and a
budget split.  Budgets are restricted to a coarse base-b grid and splits to
the single-nonzero-digit rule, which keeps the table small.

Float discipline: every cell is an upper bound.  All arithmetic flows through
the three functions `lll_log2`, `svp_log2`, `combine` below — the DP (via
numpy, elementwise-identical to scalar IEEE doubles), plan re-evaluation, and
any independent enumerator reproduce identical bit patterns as long as they
call the same functions in the same order.

Plan JSON: {"n","ell","budget","action":"recurse|dual|svp|lll","ell_star",
"children":[...]} — children are [right, left]: the right child (the
dense-sublattice-of-the-dual subplan, executed first) precedes the
continuation child.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .bounds import PowTerm, hermite_bound, log2_rational_hi, powprod_le
from .errors import (
    InvalidParams,
    InvariantViolation,
    MissingCell,
    PlanLatticeMismatch,
)
from .exactnum import rat
from .lattice import Lattice, Sublattice, density_ratio, dual, intersect_orthogonal
from .lll import lll_dsp_oracle
from .oracle import hsvp_oracle
from .reduce import RunStats, _imatmul

# ---------------------------------------------------------------------------
# shared value functions (the single source of float truth)
# ---------------------------------------------------------------------------

# upper bound on log2(4/3); all LLL leaf values derive from this constant
LOG2_4_3 = log2_rational_hi(rat(4, 3))

_COMB_REL = 1.0 + 2.0 ** -48
_COMB_ABS = 2.0 ** -300


def lll_log2(n: int, ell: int) -> float:
    """Leaf value (4/3)^{ell(n-ell)/4} in log2, rounded up."""
    return (ell * (n - ell)) * LOG2_4_3 / 4.0 * _COMB_REL + _COMB_ABS


def svp_log2(n: int) -> float:
    """Leaf value sqrt(delta_n) in log2, rounded up (Blichfeldt above rank 8)."""
    return 0.5 * hermite_bound(n).log2_delta_k


def combine(left: float, right: float, lhat: int, n_left: int) -> float:
    """log bound of a recursive step: left + (lhat/n_left)*right, rounded up.

    n_left = n - ell_star is the continuation child's rank.  The operation
    order is fixed; numpy elementwise evaluation matches it bit for bit.
    """
    e = lhat / n_left
    t = e * right
    return (left + t) * _COMB_REL + _COMB_ABS


# ---------------------------------------------------------------------------
# budgets and cost model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoarseBudgets:
    """All budgets writable in base b with all non-leading digits zero."""

    base: int
    cap: int
    values: tuple[int, ...]

    def index(self, budget: int) -> int:
        try:
            return self._index_map[budget]
        except KeyError:
            raise MissingCell(
                f"budget {budget} is not on the coarse base-{self.base} grid (cap {self.cap})"
            ) from None

    @property
    def _index_map(self) -> dict[int, int]:
        m = self.__dict__.get("_imap")
        if m is None:
            m = {c: i for i, c in enumerate(self.values)}
            self.__dict__["_imap"] = m
        return m

    def splits(self, budget: int) -> list[tuple[int, int]]:
        """Allowed (right C*, left C-C*) pairs, C* ascending.

        For C = x*b^a: if x = 1, C* ranges over y*b^{a-1} (y = 0..b-1, and
        just {0} when a = 0); if x > 1, C* ranges over z*b^a (z = 0..x-1).
        Both parts land back on the grid; C* < C always.
        """
        b = self.base
        if budget <= 0:
            return []
        a, t = 0, budget
        while t % b == 0:
            t //= b
            a += 1
        if not 1 <= t < b:
            raise MissingCell(f"budget {budget} is not coarse in base {b}")
        if t == 1:
            if a == 0:
                return [(0, budget)]
            step = b ** (a - 1)
            return [(y * step, budget - y * step) for y in range(b)]
        step = b ** a
        return [(z * step, budget - z * step) for z in range(t)]


def coarse_budgets(base: int, cap: int) -> CoarseBudgets:
    if base < 2:
        raise InvalidParams("coarse base must be >= 2")
    if cap < 0:
        raise InvalidParams("budget cap must be >= 0")
    vals = {0}
    step = 1
    while step <= cap:
        for y in range(1, base):
            v = y * step
            if v <= cap:
                vals.add(v)
        step *= base
    return CoarseBudgets(base=base, cap=cap, values=tuple(sorted(vals)))


@dataclass(frozen=True)
class CostModel:
    """Budget semantics: plain oracle-call counting, or time with T(k)."""

    mode: str = "time"  # "call-count" | "time"
    oracle_time: Callable[[int], int] = field(default=lambda k: 2 ** k)

    def __post_init__(self):
        if self.mode not in ("call-count", "time"):
            raise InvalidParams("cost mode must be 'call-count' or 'time'")

    def validate_increasing(self, n_max: int) -> None:
        prev = self.oracle_time(1)
        for i in range(2, n_max + 1):
            cur = self.oracle_time(i)
            if cur <= prev:
                raise InvalidParams("oracle_time must be strictly increasing")
            prev = cur


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

_KIND_SVP, _KIND_LLL, _KIND_RECURSE, _KIND_DUAL = 0, 1, 2, 3
_KIND_NAMES = {
    _KIND_SVP: "svp-leaf",
    _KIND_LLL: "lll-leaf",
    _KIND_RECURSE: "recurse",
    _KIND_DUAL: "duality-then",
}


@dataclass(frozen=True)
class Choice:
    kind: str  # "svp-leaf" | "lll-leaf" | "recurse" | "duality-then"
    ell_star: Optional[int] = None
    budget_star: Optional[int] = None  # right-child budget (value, not index)


class GammaTable:
    """Cells (n, ell, budget-index) -> (log2_gamma, Choice).

    k is the fixed oracle rank, or None for the variable-rank variant (with a
    time-unit CostModel).  Values are nonincreasing in the budget index and
    exactly symmetric under ell <-> n-ell.
    """

    def __init__(
        self,
        n_min: int,
        n_max: int,
        budgets: CoarseBudgets,
        k: Optional[int],
        cost: Optional[CostModel],
    ):
        self.n_min = n_min
        self.n_max = n_max
        self.budgets = budgets
        self.k = k
        self.cost = cost
        nc = len(budgets.values)
        shape = (n_max + 1, n_max + 1, nc)
        self._v = np.full(shape, np.inf, dtype=np.float64)
        self._kind = np.full(shape, -1, dtype=np.int8)
        self._lstar = np.zeros(shape, dtype=np.int32)
        self._bstar = np.zeros(shape, dtype=np.int64)  # right-child budget value

    def in_domain(self, n: int, ell: int) -> bool:
        return self.n_min <= n <= self.n_max and 1 <= ell < n

    def cell(self, n: int, ell: int, budget_index: int) -> tuple[float, Choice]:
        if not self.in_domain(n, ell) or not 0 <= budget_index < len(self.budgets.values):
            raise MissingCell(f"no cell (n={n}, ell={ell}, budget_index={budget_index})")
        kind = int(self._kind[n, ell, budget_index])
        if kind < 0:
            raise MissingCell(f"cell (n={n}, ell={ell}, budget_index={budget_index}) was never computed")
        ch = Choice(
            kind=_KIND_NAMES[kind],
            ell_star=int(self._lstar[n, ell, budget_index]) if kind == _KIND_RECURSE else None,
            budget_star=int(self._bstar[n, ell, budget_index]) if kind == _KIND_RECURSE else None,
        )
        return float(self._v[n, ell, budget_index]), ch

    def value(self, n: int, ell: int, budget: int) -> float:
        return self.cell(n, ell, self.budgets.index(budget))[0]


def _fill_level(
    table: GammaTable,
    n: int,
    ci: int,
    budget: int,
    svp_ok: Callable[[int], bool],
    svp_val: Callable[[], float],
    ls_cap: Callable[[np.ndarray], np.ndarray],
) -> None:
    """Compute all cells (n, 1..n-1, ci) given smaller cells are final."""
    V = table._v
    lh = np.arange(1, n)
    nodual = np.empty(n - 1, dtype=np.float64)
    kind = np.empty(n - 1, dtype=np.int8)
    lstar = np.zeros(n - 1, dtype=np.int32)
    bstar = np.zeros(n - 1, dtype=np.int64)

    # leaves
    lll_vals = (lh * (n - lh)) * LOG2_4_3 / 4.0 * _COMB_REL + _COMB_ABS

    # recursion candidates
    caps = ls_cap(lh)  # per-lhat max ell_star (may be < 1: no recursion)
    max_cap = int(caps.max()) if n >= 2 else 0
    rec_best = np.full(n - 1, np.inf, dtype=np.float64)
    rec_arg: Optional[np.ndarray] = None
    splits = table.budgets.splits(budget)
    if max_cap >= 1 and splits:
        ls = np.arange(1, max_cap + 1)
        exp = lh[:, None] / (n - ls)[None, :].astype(np.float64)
        invalid = ls[None, :] > caps[:, None]
        idx = table.budgets.index
        cand = np.empty((n - 1, max_cap, len(splits)), dtype=np.float64)
        for si, (c_star, c_left) in enumerate(splits):
            cl, cr = idx(c_left), idx(c_star)
            left = V[(n - ls)[None, :], lh[:, None], cl]
            right = V[n, ls, cr]
            m = (left + exp * right[None, :]) * _COMB_REL + _COMB_ABS
            m[invalid] = np.inf
            cand[:, :, si] = m
        flat = cand.reshape(n - 1, -1)
        rec_arg = np.argmin(flat, axis=1)  # first minimum: ell* asc, then C* asc
        rec_best = flat[np.arange(n - 1), rec_arg]

    nsplits = len(splits)
    for i in range(n - 1):
        ell_hat = i + 1
        # priority on exact ties: svp-leaf, then lll-leaf, then recurse
        if svp_ok(ell_hat):
            best, bkind = svp_val(), _KIND_SVP
        else:
            best, bkind = np.inf, -1
        if lll_vals[i] < best or bkind < 0:
            best, bkind = float(lll_vals[i]), _KIND_LLL
        if rec_best[i] < best:
            best, bkind = float(rec_best[i]), _KIND_RECURSE
            a = int(rec_arg[i])
            lstar[i] = a // nsplits + 1
            bstar[i] = splits[a % nsplits][0]
        nodual[i] = best
        kind[i] = bkind

    # duality pairing: prefer the un-dualed side on exact ties
    for i in range(n - 1):
        ell = i + 1
        j = (n - ell) - 1
        if nodual[j] < nodual[i]:
            V[n, ell, ci] = nodual[j]
            table._kind[n, ell, ci] = _KIND_DUAL
        else:
            V[n, ell, ci] = nodual[i]
            table._kind[n, ell, ci] = kind[i]
            table._lstar[n, ell, ci] = lstar[i]
            table._bstar[n, ell, ci] = bstar[i]


def build_table_fixed_k(n_max: int, k: int, budgets: CoarseBudgets) -> GammaTable:
    """V(n, ell, C) with all oracle calls at rank exactly k."""
    if k < 2:
        raise InvalidParams("oracle rank must be >= 2")
    if n_max < k:
        raise InvalidParams("n_max must be >= k")
    table = GammaTable(k, n_max, budgets, k, None)
    sv = svp_log2(k)
    for ci, budget in enumerate(budgets.values):
        for n in range(k, n_max + 1):
            _fill_level(
                table,
                n,
                ci,
                budget,
                svp_ok=lambda ell_hat, _n=n, _c=budget: _n == k and ell_hat == 1 and _c >= 1,
                svp_val=lambda: sv,
                ls_cap=lambda lh, _n=n: _n - np.maximum(lh + 1, k),
            )
    return table


def build_table_variable_k(
    n_max: int, budgets: CoarseBudgets, cost: CostModel
) -> GammaTable:
    """V(n, ell, T) with the oracle available at any rank r for T >= T(r)."""
    if cost.mode != "time":
        raise InvalidParams("variable-rank tables need a time cost model")
    if n_max < 2:
        raise InvalidParams("n_max must be >= 2")
    cost.validate_increasing(n_max)
    table = GammaTable(2, n_max, budgets, None, cost)
    for ci, budget in enumerate(budgets.values):
        for n in range(2, n_max + 1):
            _fill_level(
                table,
                n,
                ci,
                budget,
                svp_ok=lambda ell_hat, _n=n, _c=budget: ell_hat == 1
                and _c >= cost.oracle_time(_n),
                svp_val=lambda _n=n: svp_log2(_n),
                ls_cap=lambda lh, _n=n: _n - lh - 1,
            )
    return table


# ---------------------------------------------------------------------------
# plans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanNode:
    n: int
    ell: int
    budget: int
    action: str  # "recurse" | "dual" | "svp" | "lll"
    ell_star: Optional[int] = None
    children: tuple["PlanNode", ...] = ()


def extract_plan(table: GammaTable, n: int, ell: int, budget: int) -> PlanNode:
    ci = table.budgets.index(budget)
    return _extract(table, n, ell, ci)


def _extract(table: GammaTable, n: int, ell: int, ci: int) -> PlanNode:
    _val, ch = table.cell(n, ell, ci)
    budget = table.budgets.values[ci]
    if ch.kind == "svp-leaf":
        return PlanNode(n, ell, budget, "svp")
    if ch.kind == "lll-leaf":
        return PlanNode(n, ell, budget, "lll")
    if ch.kind == "duality-then":
        child = _extract(table, n, n - ell, ci)
        if child.action == "dual":
            raise InvariantViolation(
                "two consecutive duality choices in the table",
                {"n": n, "ell": ell, "budget": budget},
            )
        return PlanNode(n, ell, budget, "dual", children=(child,))
    ls, bs = ch.ell_star, ch.budget_star
    right = _extract(table, n, ls, table.budgets.index(bs))
    left = _extract(table, n - ls, ell, table.budgets.index(budget - bs))
    return PlanNode(n, ell, budget, "recurse", ell_star=ls, children=(right, left))


def replay_bound(plan: PlanNode) -> float:
    """Bottom-up re-evaluation with the shared value functions.

    Bit-identical to the originating table cell by construction.
    """
    if plan.action == "svp":
        return svp_log2(plan.n)
    if plan.action == "lll":
        return lll_log2(plan.n, plan.ell)
    if plan.action == "dual":
        return replay_bound(plan.children[0])
    right, left = plan.children
    return combine(replay_bound(left), replay_bound(right), plan.ell, left.n)


def plan_to_json(plan: PlanNode) -> str:
    def enc(p: PlanNode) -> dict:
        d = {"n": p.n, "ell": p.ell, "budget": p.budget, "action": p.action}
        if p.action == "recurse":
            d["ell_star"] = p.ell_star
        if p.children:
            d["children"] = [enc(c) for c in p.children]
        return d

    return json.dumps(enc(plan), indent=2)


def plan_from_json(text: str) -> PlanNode:
    def dec(d: dict) -> PlanNode:
        return PlanNode(
            n=int(d["n"]),
            ell=int(d["ell"]),
            budget=int(d["budget"]),
            action=str(d["action"]),
            ell_star=int(d["ell_star"]) if "ell_star" in d and d["ell_star"] is not None else None,
            children=tuple(dec(c) for c in d.get("children", ())),
        )

    return dec(json.loads(text))


# ---------------------------------------------------------------------------
# execution
# ---------------------------------------------------------------------------


def execute_plan(
    L: Lattice,
    plan: PlanNode,
    *,
    max_oracle_rank: Optional[int] = None,
    cost: Optional[CostModel] = None,
    stats: Optional[RunStats] = None,
) -> Sublattice:
    """Run a plan against a concrete lattice and prove the promised bound.

    Budget accounting: oracle calls when cost is None (fixed-rank plans),
    sum of cost.oracle_time(rank) otherwise.  The achieved density ratio is
    checked exactly against the plan's replayed bound at the root.
    """
    st = stats if stats is not None else RunStats()
    calls_before = st.oracle_calls
    out, spent = _exec_node(L, plan, max_oracle_rank, cost, st)
    budget_used = spent if cost is not None else st.oracle_calls - calls_before
    if budget_used > plan.budget:
        raise InvariantViolation(
            "plan execution overspent its budget",
            {"budget": plan.budget, "used": budget_used},
        )
    bound = replay_bound(plan)
    ratio = density_ratio(out)
    lhs = [
        PowTerm(ratio.det_sq_sub, Fraction(1)),
        PowTerm(ratio.det_sq_parent, Fraction(-ratio.ell, ratio.n)),
    ]
    rhs = [PowTerm(rat(2), 2 * Fraction(bound))]
    if not powprod_le(lhs, rhs):
        raise InvariantViolation(
            "executed plan exceeded its planned density bound",
            {"n": plan.n, "ell": plan.ell, "budget": plan.budget, "bound": bound},
        )
    return out


def _exec_node(
    L: Lattice,
    node: PlanNode,
    cap: Optional[int],
    cost: Optional[CostModel],
    st: RunStats,
) -> tuple[Sublattice, int]:
    """Execute one node; returns (resulting sublattice of L, time spent)."""
    if L.rank != node.n:
        raise PlanLatticeMismatch(
            f"plan node expects rank {node.n}, lattice has rank {L.rank}"
        )
    if node.action == "svp":
        if node.ell != 1:
            raise PlanLatticeMismatch("svp leaf must have ell = 1")
        out = hsvp_oracle(L, cap)
        st.oracle_calls += 1
        st.lll_calls += 1
        return out, (cost.oracle_time(node.n) if cost is not None else 0)
    if node.action == "lll":
        out = lll_dsp_oracle(L, node.ell)
        st.lll_calls += 1
        return out, 0
    if node.action == "dual":
        st.duality_steps += 1
        M, spent = _exec_node(dual(L), node.children[0], cap, cost, st)
        return intersect_orthogonal(L, M), spent
    if node.action == "recurse":
        right, left = node.children
        M, spent = _exec_node(dual(L), right, cap, cost, st)
        Lpp = intersect_orthogonal(L, M)
        S, spent_l = _exec_node(Lattice(Lpp.basis_matrix()), left, cap, cost, st)
        return Sublattice(L, _imatmul(S.coeffs, Lpp.coeffs)), spent + spent_l
    raise InvalidParams(f"unknown plan action {node.action!r}")


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------


def curve(
    n: int,
    ell: int,
    budgets: CoarseBudgets,
    k: Optional[int] = None,
    cost: Optional[CostModel] = None,
) -> list[tuple[int, float]]:
    """(budget, log2_gamma) along the coarse grid; fixed-k when k is given."""
    if k is not None:
        table = build_table_fixed_k(n, k, budgets)
    else:
        table = build_table_variable_k(n, budgets, cost if cost is not None else CostModel())
    ci_all = range(len(budgets.values))
    return [(budgets.values[ci], table.cell(n, ell, ci)[0]) for ci in ci_all]


def curve_csv_rows(
    n: int,
    ell: int,
    budgets: CoarseBudgets,
    k: Optional[int] = None,
    cost: Optional[CostModel] = None,
) -> list[str]:
    """Rows for the curve CSV: header variant,n,k,ell,budget,log2_gamma."""
    variant = "fixed" if k is not None else "variable"
    rows = ["variant,n,k,ell,budget,log2_gamma"]
    for budget, val in curve(n, ell, budgets, k, cost):
        kfield = str(k) if k is not None else ""
        rows.append(f"{variant},{n},{kfield},{ell},{budget},{val!r}")
    return rows
