"""Command-line entry point: gen | reduce | plan | curve | verify.

    latrec gen     --rank N --bits B --kind KIND --seed S [--out PATH]
    latrec reduce  --mode MODE --k K [--ell L] --tau T [--in PATH] [--out PATH]
                   [--trace PATH] [--max-oracle-rank R] [--instrument]
    latrec plan    --n N (--k K | --variable) --ell L --budget C [--base B] [--out PATH]
    latrec curve   --n N (--k K | --variable) --ell L --budget CAP [--base B] [--out PATH]
    latrec verify  --suite NAME [--sizes N] [--seed S]

Exit codes: 0 — success and every reported check PASSed; 1 — usage error or a
violated precondition (bad flags, malformed input, parameters outside a
guarantee's hypotheses); 2 — a proven invariant failed at runtime or a verify
suite / guarantee check reported FAIL.

Determinism: the only random source is one seeded Mersenne Twister
(``random.Random``; algorithm id "mt19937", echoed in report headers).
Running any command twice with the same flags and seed produces byte-identical
output.  Reports carry no timestamps or machine identifiers; files are written
UTF-8 with LF line endings.

The verify suites re-check the library's exact invariants on freshly sampled
instances.  Setting ``LATREC_VERIFY_BREAK=<suite>`` deliberately corrupts one
compared quantity in that suite's first case; the run must then print a FAIL
line plus a counterexample dump and exit 2.  This proves the harness can
actually catch a failure, and is used by the test suite.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import os
import random
import sys
from typing import Callable, Optional

from .bounds import delta_pow_upper
from .errors import (
    DegenerateBasis,
    InvariantViolation,
    LatrecError,
    NotASublattice,
    NotPrimitive,
    PlanLatticeMismatch,
    RankMismatch,
)
from .exactnum import bitlength, gram_det_sq, int_bits, rat, rat_str
from .genlat import KINDS, generate
from .lattice import (
    Lattice,
    Sublattice,
    density_ratio,
    dual,
    intersect_orthogonal,
    is_primitive,
    lattice_from_json,
    lattice_to_json,
    primitivize,
)
from .lll import lll_reduce
from .oracle import hsvp_oracle
from .planner import (
    CostModel,
    build_table_fixed_k,
    build_table_variable_k,
    coarse_budgets,
    curve_csv_rows,
    execute_plan,
    extract_plan,
    plan_from_json,
    plan_to_json,
    replay_bound,
    svp_log2,
)
from .reduce import (
    MODES,
    ReductionParams,
    RunStats,
    dsp_to_dsp,
    dsp_to_hsvp,
    gamma_sq_within,
    hsvp_recursive,
    theorem_bound,
)

PRNG_ID = "mt19937"

MODE_FORMULA = {"hsvp2hsvp": "sec2", "dsp2dsp": "thm4", "dsp2hsvp": "thm5"}

# Raised only when the library caught itself producing a wrong answer; maps to
# exit code 2.  Every other LatrecError is a refused precondition: exit code 1.
_INVARIANT_ERRORS = (InvariantViolation, NotASublattice, NotPrimitive, PlanLatticeMismatch)


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_lattice(in_path: Optional[str]) -> Lattice:
    text = sys.stdin.read() if in_path in (None, "-") else open(in_path, encoding="utf-8").read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise LatrecError(f"input is not valid JSON: {e}") from None
    return lattice_from_json(obj)


# ---------------------------------------------------------------------------
# gen / reduce / plan / curve
# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    L = generate(args.kind, args.rank, args.bits, args.seed)
    obj = {
        "generator": {
            "kind": args.kind,
            "rank": args.rank,
            "bits": args.bits,
            "seed": args.seed,
            "prng": PRNG_ID,
        }
    }
    obj.update(lattice_to_json(L))
    _emit(json.dumps(obj, indent=2) + "\n", args.out)
    return 0


def cmd_reduce(args) -> int:
    L = _read_lattice(args.infile)
    ell = args.ell if args.ell is not None else 1
    params = ReductionParams(
        k=args.k,
        tau=args.tau,
        mode=args.mode,
        max_oracle_rank=args.max_oracle_rank,
        instrument=args.instrument,
    )
    # Checks the guarantee's hypotheses up front: out-of-range parameters are
    # refused here (exit 1) before any reduction work starts.
    bound = theorem_bound(MODE_FORMULA[args.mode], L.rank, ell, args.tau, args.k)
    stats = RunStats()
    with contextlib.ExitStack() as es:
        trace = None
        if args.trace:
            trace = es.enter_context(open(args.trace, "w", encoding="utf-8", newline="\n"))
        if args.mode == "hsvp2hsvp":
            sub = hsvp_recursive(L, args.tau, params, stats=stats, trace=trace)
        elif args.mode == "dsp2dsp":
            sub = dsp_to_dsp(L, ell, args.tau, params, stats=stats, trace=trace)
        else:
            sub = dsp_to_hsvp(L, ell, args.tau, params, stats=stats, trace=trace)
    ok = gamma_sq_within(sub, bound)
    report = {
        "command": "reduce",
        "mode": args.mode,
        "n": L.rank,
        "k": args.k,
        "ell": ell,
        "tau": args.tau,
        "formula_id": bound.formula_id,
        "stats": {
            "oracle_calls": stats.oracle_calls,
            "lll_calls": stats.lll_calls,
            "duality_steps": stats.duality_steps,
            "depth_reached": stats.depth_reached,
            "max_bitlength_seen": stats.max_bitlength_seen,
        },
        "log2_gamma_achieved": 0.5 * density_ratio(sub).log2(),
        "log2_gamma_bound": bound.log2_gamma_bound,
        "guarantee": "PASS" if ok else "FAIL",
        "sublattice": {
            "coeffs": [list(row) for row in sub.coeffs],
            "basis": [[rat_str(x) for x in row] for row in sub.basis_matrix()],
        },
    }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0 if ok else 2


def _plan_table(args):
    budgets = coarse_budgets(args.base, args.budget)
    if args.variable:
        table = build_table_variable_k(args.n, budgets, CostModel())
        return table, "variable", None
    if args.k is None:
        raise LatrecError("pass --k K for a fixed oracle rank, or --variable")
    table = build_table_fixed_k(args.n, args.k, budgets)
    return table, "fixed", args.k


def cmd_plan(args) -> int:
    table, variant, k = _plan_table(args)
    plan = extract_plan(table, args.n, args.ell, args.budget)
    obj = {
        "command": "plan",
        "variant": variant,
        "n": args.n,
        "k": k,
        "ell": args.ell,
        "budget": args.budget,
        "base": args.base,
        "log2_gamma": table.value(args.n, args.ell, args.budget),
        "plan": json.loads(plan_to_json(plan)),
    }
    _emit(json.dumps(obj, indent=2) + "\n", args.out)
    return 0


def cmd_curve(args) -> int:
    budgets = coarse_budgets(args.base, args.budget)
    if args.variable:
        rows = curve_csv_rows(args.n, args.ell, budgets, k=None, cost=CostModel())
    else:
        if args.k is None:
            raise LatrecError("pass --k K for a fixed oracle rank, or --variable")
        rows = curve_csv_rows(args.n, args.ell, budgets, k=args.k)
    _emit("\n".join(rows) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# verify suites
#
# Each suite is a function (rng, sizes, broken) -> list of
# (check_name, pass_count, failures) where failures is a list of
# counterexample dicts (kept to the first one per check).
# ---------------------------------------------------------------------------


class _Checks:
    """Tallies named checks; retains the first counterexample per name."""

    def __init__(self, suite: str):
        self.suite = suite
        self.order: list[str] = []
        self.passed: dict[str, int] = {}
        self.failed: dict[str, list[dict]] = {}

    def record(self, name: str, ok: bool, case: int, ce: Callable[[], dict]) -> None:
        if name not in self.passed:
            self.order.append(name)
            self.passed[name] = 0
            self.failed[name] = []
        if ok:
            self.passed[name] += 1
        elif not self.failed[name]:
            d = {"case": case, "check": f"{self.suite}.{name}"}
            d.update(ce())
            self.failed[name].append(d)
        else:
            self.failed[name].append({"case": case})

    def report(self) -> tuple[list[str], int]:
        lines = []
        nfail = 0
        for name in self.order:
            bad = self.failed[name]
            if not bad:
                lines.append(f"PASS {self.suite}.{name} cases={self.passed[name]}")
            else:
                nfail += 1
                lines.append(f"FAIL {self.suite}.{name} case={bad[0]['case']} failures={len(bad)}")
                lines.append("counterexample: " + json.dumps(bad[0], sort_keys=True))
        return lines, nfail


def _rand_lattice(rng: random.Random, n: int, span: int = 9, denom: int = 1) -> Lattice:
    while True:
        rows = [
            [rat(rng.randint(-span, span), rng.randint(1, denom)) for _ in range(n)]
            for _ in range(n)
        ]
        try:
            return Lattice(rows)
        except DegenerateBasis:
            continue


def _rand_primitive_sub(rng: random.Random, L: Lattice, m: int) -> Sublattice:
    n = L.rank
    while True:
        Z = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        try:
            return primitivize(Sublattice(L, tuple(tuple(r) for r in Z)))
        except (DegenerateBasis, RankMismatch):
            continue


def _suite_duality(rng: random.Random, sizes: int, broken: bool) -> _Checks:
    c = _Checks("duality")
    for i in range(200):
        n = rng.randint(2, max(2, sizes))
        L = _rand_lattice(rng, n, denom=rng.choice((1, 1, 2)))
        D = dual(L)
        ddL = dual(D)
        c.record("involution", ddL.same_lattice(L), i, lambda: {"lattice": lattice_to_json(L)})
        lhs = D.det_sq() * L.det_sq() * (2 if broken and i == 0 else 1)
        c.record("det-identity", lhs == 1, i, lambda: {"lattice": lattice_to_json(L)})
        m = rng.randint(1, n - 1)
        M = _rand_primitive_sub(rng, D, m)
        Lp = intersect_orthogonal(L, M)
        c.record(
            "gamma-preserved",
            density_ratio(Lp).eq_gamma_sq(density_ratio(M)),
            i,
            lambda: {"lattice": lattice_to_json(L), "m_coeffs": [list(r) for r in M.coeffs]},
        )
        c.record(
            "intersect-det",
            Lp.det_sq() == L.det_sq() * M.det_sq(),
            i,
            lambda: {"lattice": lattice_to_json(L), "m_coeffs": [list(r) for r in M.coeffs]},
        )
    return c


def _suite_composition(rng: random.Random, sizes: int, broken: bool) -> _Checks:
    c = _Checks("composition")
    for i in range(200):
        n = rng.randint(3, max(3, sizes))
        L = _rand_lattice(rng, n)
        ell_star = rng.randint(1, n - 2)
        M = _rand_primitive_sub(rng, dual(L), ell_star)
        Lpp = intersect_orthogonal(L, M)
        npp = Lpp.rank
        c.record("rank-complement", npp == n - ell_star, i, lambda: {"lattice": lattice_to_json(L)})
        inner = Lattice(Lpp.basis_matrix())
        m = rng.randint(1, npp)
        S = _rand_primitive_sub(rng, inner, m)
        composed = [
            [sum(S.coeffs[a][b] * Lpp.coeffs[b][j] for b in range(npp)) for j in range(n)]
            for a in range(m)
        ]
        if broken and i == 0:
            composed[0][0] += 1
        S_L = Sublattice(L, tuple(tuple(r) for r in composed))
        c.record(
            "coeff-compose",
            S_L.as_lattice().same_lattice(S.as_lattice()),
            i,
            lambda: {
                "lattice": lattice_to_json(L),
                "m_coeffs": [list(r) for r in M.coeffs],
                "s_coeffs": [list(r) for r in S.coeffs],
            },
        )
        # gamma over the composite step splits into the two stage ratios; with
        # the determinant identity this collapses to det(Lpp)² = det(M)²·det(L)².
        c.record(
            "det-chain",
            Lpp.det_sq() == M.det_sq() * L.det_sq(),
            i,
            lambda: {"lattice": lattice_to_json(L), "m_coeffs": [list(r) for r in M.coeffs]},
        )
    return c


def _suite_lll(rng: random.Random, sizes: int, broken: bool) -> _Checks:
    from .lll import assert_lll_conditions
    from .rounding import lll_entries_bounded

    c = _Checks("lll")
    for i in range(60):
        n = rng.randint(2, max(2, sizes))
        L = _rand_lattice(rng, n, span=30, denom=rng.choice((1, 1, 1, 3)))
        R = lll_reduce(L)
        try:
            assert_lll_conditions(R.gso)
            conds = True
        except InvariantViolation:
            conds = False
        ce = lambda: {"lattice": lattice_to_json(L)}
        c.record("conditions", conds, i, ce)
        det_sq = L.det_sq()
        prod = rat(1)
        for row in R.basis:
            prod *= sum(x * x for x in row)
        if broken and i == 0:
            # Hadamard gives prod >= det_sq, so this inflation always trips
            prod *= rat(2) ** (n * n)
        c.record("defect", prod <= rat(2) ** ((n * (n - 1)) // 2) * det_sq, i, ce)
        b1 = sum(x * x for x in R.basis[0])
        c.record("first-vector", b1 ** n <= rat(2) ** ((n * (n - 1)) // 2) * det_sq, i, ce)
        c.record("unimodular", gram_det_sq(R.transform) == 1, i, ce)
        c.record("same-lattice", Lattice(R.basis).same_lattice(L), i, ce)
        c.record("entry-bound", lll_entries_bounded(R.basis), i, ce)
    return c


def _suite_oracle(rng: random.Random, sizes: int, broken: bool) -> _Checks:
    c = _Checks("oracle")
    for i in range(120):
        r = rng.randint(2, min(4, max(2, sizes)))
        L = _rand_lattice(rng, r, span=8)
        S = hsvp_oracle(L)
        v = S.basis_matrix()[0]
        norm_sq = sum(x * x for x in v)
        if broken and i == 0:
            norm_sq *= 4
        ce = lambda: {"lattice": lattice_to_json(L), "coeffs": [list(row) for row in S.coeffs]}
        # every nonzero vector in a small coefficient box is an explicit
        # competitor; the oracle's vector may never be longer than any of them
        best = None
        red = lll_reduce(L)
        for z in _int_box(r, 2):
            if any(z):
                w = [sum(z[a] * red.basis[a][j] for a in range(r)) for j in range(r)]
                nw = sum(x * x for x in w)
                best = nw if best is None or nw < best else best
        c.record("box-minimal", norm_sq <= best, i, ce)
        c.record("hermite", norm_sq ** r <= delta_pow_upper(r) * L.det_sq(), i, ce)
        c.record("primitive", is_primitive(S), i, ce)
    return c


def _int_box(dim: int, radius: int):
    if dim == 0:
        yield ()
        return
    for rest in _int_box(dim - 1, radius):
        for x in range(-radius, radius + 1):
            yield (x,) + rest


def _suite_reduce(rng: random.Random, sizes: int, broken: bool) -> _Checks:
    c = _Checks("reduce")
    i = 0
    for k in (2, 3):
        for n in range(k, min(k + 4, max(k, sizes)) + 1):
            for tau in range(4):
                L = _rand_lattice(rng, n, span=20)
                params = ReductionParams(k=k, tau=tau, mode="hsvp2hsvp")
                stats = RunStats()
                sub = hsvp_recursive(L, tau, params, stats=stats)
                expected = 0 if tau == 0 else math.comb(n - k + tau - 1, tau - 1)
                if broken and i == 0:
                    expected += 1
                ce = lambda: {
                    "lattice": lattice_to_json(L),
                    "params": {"k": k, "n": n, "tau": tau},
                    "oracle_calls": stats.oracle_calls,
                }
                c.record("call-count", stats.oracle_calls == expected, i, ce)
                bound = theorem_bound("sec2", n, 1, tau, k)
                c.record("bound", gamma_sq_within(sub, bound), i, ce)
                c.record("rank-one", sub.rank == 1, i, ce)
                i += 1
    if sizes >= 12:
        for mode, n, ell in (("dsp2dsp", 11, 1), ("dsp2hsvp", 12, 2)):
            L = _rand_lattice(rng, n, span=6)
            params = ReductionParams(k=10, tau=2, mode=mode)
            stats = RunStats()
            fn = dsp_to_dsp if mode == "dsp2dsp" else dsp_to_hsvp
            sub = fn(L, ell, 2, params, stats=stats)
            bound = theorem_bound(MODE_FORMULA[mode], n, ell, 2, 10)
            c.record(
                f"{mode}-bound",
                gamma_sq_within(sub, bound) and sub.rank == ell,
                i,
                lambda: {"lattice": lattice_to_json(L), "mode": mode},
            )
            i += 1
    # the hypothesis guard: ell beyond n-k+1 must be refused up front
    try:
        theorem_bound("thm5", 12, 4, 2, 10)
        guarded = False
    except LatrecError:
        guarded = True
    c.record("hypothesis-guard", guarded, i, lambda: {"n": 12, "k": 10, "ell": 4})
    return c


def _suite_planner(rng: random.Random, sizes: int, broken: bool) -> _Checks:
    c = _Checks("planner")
    grid = coarse_budgets(8, 64).values
    want = tuple(list(range(9)) + [16, 24, 32, 40, 48, 56, 64])
    c.record("grid", grid == want, 0, lambda: {"grid": list(grid), "want": list(want)})

    n_max = max(6, min(8, sizes))
    budgets = coarse_budgets(3, 27)
    table = build_table_fixed_k(n_max, 3, budgets)
    mono_ok, replay_ok, cells = True, True, 0
    bad = {}
    for n in range(3, n_max + 1):
        for ell in range(1, n):
            prev = None
            for ci, b in enumerate(budgets.values):
                val = table.cell(n, ell, ci)[0]
                if broken and (n, ell, ci) == (3, 1, 1):
                    val -= 1.0
                if prev is not None and val > prev:
                    mono_ok = False
                    bad = {"n": n, "ell": ell, "budget": b}
                prev = val
                plan = extract_plan(table, n, ell, b)
                if replay_bound(plan) != table.cell(n, ell, ci)[0]:
                    replay_ok = False
                    bad = {"n": n, "ell": ell, "budget": b}
                if plan_to_json(plan) != plan_to_json(plan_from_json(plan_to_json(plan))):
                    replay_ok = False
                cells += 1
    c.record("monotone", mono_ok, cells, lambda: bad)
    c.record("replay", replay_ok, cells, lambda: bad)
    c.record(
        "svp-cell",
        table.value(3, 1, 1) == svp_log2(3),
        0,
        lambda: {"value": table.value(3, 1, 1), "want": svp_log2(3)},
    )

    L = _rand_lattice(rng, 4, span=15)
    small = build_table_fixed_k(4, 2, coarse_budgets(2, 4))
    plan = extract_plan(small, 4, 1, 4)
    stats = RunStats()
    try:
        execute_plan(L, plan, stats=stats)
        exec_ok = stats.oracle_calls <= 4
    except LatrecError:
        exec_ok = False
    c.record("execute", exec_ok, 0, lambda: {"lattice": lattice_to_json(L)})
    return c


def _suite_repr(rng: random.Random, sizes: int, broken: bool) -> _Checks:
    from .rounding import (
        beta_step_bounds,
        dual_q_bound,
        rescale_map,
        apply_rescale,
        round_basis,
        scaled_profile,
        size_profile,
        lift_solution,
    )

    c = _Checks("repr")
    ident = size_profile(Lattice([[rat(1), rat(0)], [rat(0), rat(1)]]))
    pin_ok = ident.q == 1 and ident.log2_beta == 0.0 and ident.log2_delta == 0.0
    half = size_profile(Lattice([[rat(1), rat(0)], [rat(0), rat(1, 2)]]))
    pin_ok = pin_ok and half.q == 2
    c.record("profile-pinned", pin_ok, 0, lambda: {"q": half.q})

    cap = min(max(2, sizes), 5)
    for i in range(30):
        n = rng.randint(2, cap)
        L = _rand_lattice(rng, n, span=9, denom=rng.choice((1, 2)))
        before = size_profile(L)
        D = dual(L)
        after = size_profile(D)
        ce = lambda: {"lattice": lattice_to_json(L)}
        dual_ok = beta_step_bounds(before, "dual", after, n) and dual_q_bound(before, after, n)
        if broken and i == 0:
            dual_ok = not dual_ok
        c.record("beta-dual", dual_ok, i, ce)
        if n >= 2:
            # the growth bound is proven for density-bounded sublattices, so
            # draw M the way the engine does (an LLL dense-block oracle call),
            # not from arbitrary coefficients
            from .lll import lll_dsp_oracle

            M = lll_dsp_oracle(D, rng.randint(1, n - 1))
            Lp = intersect_orthogonal(L, M)
            mid = size_profile(Lp.basis_matrix())
            c.record("beta-intersect", beta_step_bounds(before, "intersect", mid, n), i, ce)

    for i in range(20):
        n = rng.randint(2, cap)
        L = _rand_lattice(rng, n, span=40)
        m = max(int_bits(int(x)) for row in L.basis for x in row)
        red = lll_reduce(L)
        c.record(
            "lll-bits",
            bitlength(red.basis) <= 4 * n ** 3 * m + 4 * n ** 4,
            i,
            lambda: {"lattice": lattice_to_json(L), "bits": bitlength(red.basis)},
        )
        rm = rescale_map(red, 4)
        out = apply_rescale(red, rm)
        sandwich = all(
            out.gso.gs_norms_sq[j] * rat(rm.alphas[j]) ** 2 == red.gso.gs_norms_sq[j]
            for j in range(n)
        )
        c.record("rescale-norms", sandwich, i, lambda: {"alphas": list(rm.alphas)})

    # rounding round-trip on a lattice whose leading block is *not* already
    # densest (D_n-style rows keep the non-corner branch honest)
    rows = [[0] * 4 for _ in range(4)]
    rows[0][0], rows[0][1] = 1, 1
    rows[1][0], rows[1][1] = 1, -1
    rows[2][1], rows[2][2] = 1, -1
    rows[3][2], rows[3][3] = 1, -1
    L4 = Lattice([[rat(x) for x in r] for r in rows])
    prof, m_prime = scaled_profile(4, 4)
    rb = round_basis(L4.basis, 1, m_prime, profile=prof)
    bits_ok = bitlength(rb.b_prime) <= m_prime
    lift = lift_solution(rb, [[1, 0, 0, 0]])
    c.record(
        "round-basis",
        bits_ok and lift.rank == 1 and lift.parent.same_lattice(L4),
        0,
        lambda: {"bits": bitlength(rb.b_prime), "m_prime": m_prime},
    )
    return c


_SUITES = {
    "duality": _suite_duality,
    "composition": _suite_composition,
    "lll": _suite_lll,
    "oracle": _suite_oracle,
    "reduce": _suite_reduce,
    "planner": _suite_planner,
    "repr": _suite_repr,
}


def cmd_verify(args) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    break_target = os.environ.get("LATREC_VERIFY_BREAK", "")
    out = []
    total_fail = 0
    for name in names:
        rng = random.Random(args.seed)
        out.append(f"# latrec verify suite={name} sizes={args.sizes} seed={args.seed} prng={PRNG_ID}")
        checks = _SUITES[name](rng, args.sizes, break_target == name)
        lines, nfail = checks.report()
        out.extend(lines)
        total_fail += nfail
        out.append(f"RESULT {'FAIL' if nfail else 'PASS'} suite={name} failures={nfail}")
    _emit("\n".join(out) + "\n", None)
    return 2 if total_fail else 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="latrec", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded random lattice as JSON")
    g.add_argument("--rank", type=int, required=True)
    g.add_argument("--bits", type=int, required=True)
    g.add_argument("--kind", choices=KINDS, default="uniform-integer")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", default=None)
    g.set_defaults(fn=cmd_gen)

    r = sub.add_parser("reduce", help="run a recursive reduction and check its guarantee")
    r.add_argument("--mode", choices=MODES, required=True)
    r.add_argument("--k", type=int, required=True, help="oracle rank")
    r.add_argument("--ell", type=int, default=None, help="target sublattice rank (dsp modes)")
    r.add_argument("--tau", type=int, required=True, help="recursion depth parameter")
    r.add_argument("--in", dest="infile", default=None, help="lattice JSON (default: stdin)")
    r.add_argument("--out", default=None, help="report path (default: stdout)")
    r.add_argument("--trace", default=None, help="write a JSON-lines node trace here")
    r.add_argument("--max-oracle-rank", type=int, default=None)
    r.add_argument("--instrument", action="store_true", help="record per-node size profiles")
    r.set_defaults(fn=cmd_reduce)

    pl = sub.add_parser("plan", help="extract one provably optimal reduction tree")
    pl.add_argument("--n", type=int, required=True)
    pl.add_argument("--k", type=int, default=None)
    pl.add_argument("--variable", action="store_true", help="variable oracle rank, time budget")
    pl.add_argument("--ell", type=int, required=True)
    pl.add_argument("--budget", type=int, required=True, help="must lie on the coarse grid")
    pl.add_argument("--base", type=int, default=10)
    pl.add_argument("--out", default=None)
    pl.set_defaults(fn=cmd_plan)

    cv = sub.add_parser("curve", help="budget/quality tradeoff curve as CSV")
    cv.add_argument("--n", type=int, required=True)
    cv.add_argument("--k", type=int, default=None)
    cv.add_argument("--variable", action="store_true")
    cv.add_argument("--ell", type=int, required=True)
    cv.add_argument("--budget", type=int, required=True, help="largest budget on the grid")
    cv.add_argument("--base", type=int, default=8)
    cv.add_argument("--out", default=None)
    cv.set_defaults(fn=cmd_curve)

    v = sub.add_parser("verify", help="re-check library invariants on random instances")
    v.add_argument("--suite", choices=sorted(_SUITES) + ["all"], required=True)
    v.add_argument("--sizes", type=int, default=6, help="largest lattice rank to sample")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _INVARIANT_ERRORS as e:
        sys.stderr.write(f"latrec {args.command}: invariant violated: {e}\n")
        return 2
    except LatrecError as e:
        sys.stderr.write(f"latrec {args.command}: {e}\n")
        return 1
    except OSError as e:
        sys.stderr.write(f"latrec {args.command}: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
