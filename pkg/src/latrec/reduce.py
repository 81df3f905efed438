"""The three recursive reductions, instrumented to prove their own guarantees.

Engines:
  hsvp_recursive  — rank-1 output via a rank-k oracle and depth parameter tau
  dsp_to_dsp      — rank-ell output via a rank-k sublattice oracle
  dsp_to_hsvp     — rank-ell output via a rank-k shortest-vector oracle only

Every node re-checks the structural invariants its correctness proof relies on
(rank accounting, the min{ell, n-ell} ≤ n-k+1 invariant, no consecutive
duality steps, a non-increasing potential), and every run re-checks the final
density guarantee exactly.  Violations raise InvariantViolation carrying the
full path of (n, ell, tau) triples.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Optional, Sequence

from .bounds import PowTerm, hermite_bound, powprod_le, round_up
from .errors import HypothesisViolated, InvalidParams, InvariantViolation
from .exactnum import RatMatrix, bitlength, rat
from .lattice import (
    Lattice,
    Sublattice,
    density_ratio,
    dual,
    intersect_orthogonal,
)
from .lll import lll_dsp_oracle, lll_reduce
from .oracle import hsvp_oracle

MODES = ("hsvp2hsvp", "dsp2dsp", "dsp2hsvp")

# Upper bound on 2^{-1/2} used when an exponent carries a half-integer power
# of two that must be rounded in the sound direction for float reporting.
_INV_SQRT2_HI = 0.7071067811865476


@dataclass(frozen=True)
class ReductionParams:
    """k: oracle rank; tau: depth parameter; mode selects the engine.

    max_oracle_rank overrides the enumeration cap; instrument re-runs LLL on
    every node input and adds size-profile records and step bounds (see the
    rounding module) to the trace.
    """

    k: int
    tau: int
    mode: str
    max_oracle_rank: Optional[int] = None
    instrument: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidParams(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.tau < 0:
            raise InvalidParams("tau must be >= 0")
        if self.mode == "hsvp2hsvp":
            if self.k < 2:
                raise InvalidParams("oracle rank must be >= 2 for hsvp2hsvp")
        elif self.k < 10:
            raise InvalidParams("oracle rank must be >= 10 for dsp2dsp/dsp2hsvp")


@dataclass
class RunStats:
    """Counters for one reduction run.

    oracle_calls counts base-case oracle invocations (the quantity the
    call-count formulas bound); lll_calls counts every LLL reduction run by
    the engine itself, including the one inside a base-case sublattice oracle.
    """

    oracle_calls: int = 0
    lll_calls: int = 0
    duality_steps: int = 0
    max_bitlength_seen: int = 0
    depth_reached: int = 0


@dataclass(frozen=True)
class GuaranteeBound:
    """Closed-form density guarantee at given parameters.

    formula_id is one of the opaque identifiers "sec2", "thm4", "thm5" fixed
    by the trace/JSON format: respectively the rank-1 recursion bound
    delta_k^{(n-1)/(2(k-1))} * 2^{n^3/2^tau}, the sublattice-oracle recursion
    bound alpha_k^{l(n-l)} * 2^{l(n-l)n^2/2^{tau/2}} with alpha_k = 2 (the
    instantiated oracle's constant), and the shortest-vector-oracle recursion
    bound gamma(k)^{l(n-l)/(k-1)} * 2^{l(n-l)n^2/2^tau}.
    """

    log2_gamma_bound: float
    formula_id: str
    n: int
    ell: int
    tau: int
    k: int

    def gamma_sq_terms(self) -> list[PowTerm]:
        """The bound on gamma², as an exactly comparable power product.

        For formula "thm4" with odd tau the irrational exponent n²l(n-l)/2^{tau/2}
        is replaced by the strictly smaller value at tau+1; the check becomes
        strictly stronger, never weaker.
        """
        n, ell, tau, k = self.n, self.ell, self.tau, self.k
        from .bounds import delta_pow_upper  # local: keeps module import light

        if self.formula_id == "sec2":
            return [
                PowTerm(delta_pow_upper(k), Fraction(n - 1, k * (k - 1))),
                PowTerm(rat(2), Fraction(2 * n ** 3, 2 ** tau)),
            ]
        if self.formula_id == "thm4":
            half = (tau + 1) // 2  # tau/2 rounded up: sound strengthening
            return [
                PowTerm(
                    rat(2),
                    Fraction(2 * ell * (n - ell))
                    + Fraction(2 * ell * (n - ell) * n * n, 2 ** half),
                ),
            ]
        if self.formula_id == "thm5":
            return [
                PowTerm(delta_pow_upper(k), Fraction(ell * (n - ell), k * (k - 1))),
                PowTerm(rat(2), Fraction(2 * ell * (n - ell) * n * n, 2 ** tau)),
            ]
        raise InvalidParams(f"unknown formula_id {self.formula_id!r}")


def theorem_bound(formula_id: str, n: int, ell: int, tau: int, k: int) -> GuaranteeBound:
    """log2 of the stated guarantee, double precision rounded upward."""
    if tau < 0:
        raise HypothesisViolated("tau must be >= 0")
    if formula_id == "sec2":
        if not (2 <= k <= n):
            raise HypothesisViolated("rank-1 recursion bound needs 2 <= k <= n")
        if ell != 1:
            raise HypothesisViolated("rank-1 recursion bound is stated for ell = 1")
        log2d = hermite_bound(k).log2_delta_k
        val = (n - 1) * log2d / (2 * (k - 1)) + math.ldexp(float(n ** 3), -tau)
    elif formula_id == "thm4":
        if not (n >= k >= 10):
            raise HypothesisViolated("sublattice-oracle recursion bound needs n >= k >= 10")
        if not (1 <= ell < n):
            raise HypothesisViolated("sublattice-oracle recursion bound needs 1 <= ell < n")
        t = math.ldexp(float(ell * (n - ell) * n * n), -(tau // 2))
        if tau % 2:
            t *= _INV_SQRT2_HI
        val = float(ell * (n - ell)) + t  # log2(alpha_k) = 1 with alpha_k = 2
    elif formula_id == "thm5":
        if not (n >= k >= 10):
            raise HypothesisViolated("vector-oracle recursion bound needs n >= k >= 10")
        if not (1 <= ell <= n - k + 1):
            raise HypothesisViolated("vector-oracle recursion bound needs 1 <= ell <= n-k+1")
        log2d = hermite_bound(k).log2_delta_k
        val = ell * (n - ell) * log2d / (2 * (k - 1)) + math.ldexp(
            float(ell * (n - ell) * n * n), -tau
        )
    else:
        raise InvalidParams(f"unknown formula_id {formula_id!r}")
    return GuaranteeBound(
        log2_gamma_bound=round_up(val), formula_id=formula_id, n=n, ell=ell, tau=tau, k=k
    )


def gamma_sq_within(sub: Sublattice, bound: GuaranteeBound) -> bool:
    """Exact check: gamma(parent, sub)² ≤ the bound's power product."""
    ratio = density_ratio(sub)
    lhs = [
        PowTerm(ratio.det_sq_sub, Fraction(1)),
        PowTerm(ratio.det_sq_parent, Fraction(-ratio.ell, ratio.n)),
    ]
    return powprod_le(lhs, bound.gamma_sq_terms())


def _imatmul(
    A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]
) -> tuple[tuple[int, ...], ...]:
    m = len(B)
    cols = len(B[0])
    return tuple(
        tuple(sum(row[i] * B[i][j] for i in range(m)) for j in range(cols)) for row in A
    )


class _Run:
    """Per-run state: stats, the (n, ell, tau) path, trace, assertions."""

    def __init__(self, params: ReductionParams, stats: RunStats, trace: Optional[IO[str]]):
        self.params = params
        self.stats = stats
        self.trace = trace
        self.path: list[tuple[int, int, int]] = []
        self.path_limit = 0  # set at root

    # -- bookkeeping ------------------------------------------------------

    def enter(self, n: int, ell: int, tau: int) -> None:
        if self.path:
            self._check_potential(self.path[-1], (n, ell, tau))
        self.path.append((n, ell, tau))
        if len(self.path) > self.path_limit:
            raise InvariantViolation(
                "recursion path exceeded its proven length bound",
                {"limit": self.path_limit, "path": list(self.path)},
            )
        self.stats.depth_reached = max(self.stats.depth_reached, len(self.path))

    def exit(self) -> None:
        self.path.pop()

    def _check_potential(self, parent: tuple[int, int, int], child: tuple[int, int, int]) -> None:
        # potential tau + 20*log2(n-k+1) never increases along an edge;
        # exact integer form: m_child^20 ≤ m_parent^20 * 2^{tau_p - tau_c}
        k = self.params.k
        (pn, _pe, pt), (cn, _ce, ct) = parent, child
        mp, mc = pn - k + 1, cn - k + 1
        if ct > pt or mc ** 20 > mp ** 20 * 2 ** (pt - ct):
            raise InvariantViolation(
                "node potential increased along a recursion edge",
                {"parent": parent, "child": child, "path": list(self.path) + [child]},
            )

    def see_basis(self, B: RatMatrix) -> int:
        bits = bitlength(B)
        if bits > self.stats.max_bitlength_seen:
            self.stats.max_bitlength_seen = bits
        return bits

    def record(
        self,
        mode: str,
        n: int,
        ell: int,
        tau: int,
        action: str,
        bits: int,
        sub: Sublattice,
        extra: Optional[dict] = None,
    ) -> None:
        if self.trace is None:
            return
        rec = {
            "mode": mode,
            "n": n,
            "ell": ell,
            "tau": tau,
            "action": action,
            "bitlength": bits,
            "log2_gamma_sq_exact": density_ratio(sub).log2(),
        }
        if extra:
            rec.update(extra)
        self.trace.write(json.dumps(rec) + "\n")

    # -- instrumented representation hooks --------------------------------

    def profile(self, L: Lattice):
        from . import rounding  # deferred: only instrumented runs need it

        return rounding.size_profile(L.basis)

    def beta_step(self, op: str, before, after, n: int) -> None:
        from . import rounding

        if not rounding.beta_step_bounds(before, op, after, n):
            raise InvariantViolation(
                f"size-profile step bound failed for {op}",
                {"path": list(self.path)},
            )

    def node_lattice(self, L: Lattice) -> tuple[Lattice, Optional[tuple[tuple[int, ...], ...]], dict]:
        """Re-reduce the node input when instrumentation is on.

        Returns (working lattice, coefficient transform back to L or None,
        extra trace fields).  Guarantees Lattice(work) == L as a set.
        """
        if not self.params.instrument:
            return L, None, {}
        red = lll_reduce(L)
        self.stats.lll_calls += 1
        work = Lattice(red.basis)
        prof = self.profile(work)
        extra = {
            "q_bits": int(prof.q).bit_length(),
            "beta": prof.log2_beta,
            "basis_bits": bitlength(red.basis),
        }
        return work, red.transform_int_rows(), extra

    def to_parent(
        self,
        L: Lattice,
        work_sub: Sublattice,
        transform: Optional[tuple[tuple[int, ...], ...]],
    ) -> Sublattice:
        if transform is None:
            return work_sub
        return Sublattice(L, _imatmul(work_sub.coeffs, transform))

    # -- shared verified steps ---------------------------------------------

    def checked_dual(self, L: Lattice, n: int) -> Lattice:
        D = dual(L)
        if self.params.instrument:
            self.beta_step("dual", self.profile(L), self.profile(D), n)
        return D

    def checked_intersect(self, L: Lattice, M: Sublattice, n: int) -> Sublattice:
        out = intersect_orthogonal(L, M)
        if self.params.instrument:
            self.beta_step(
                "intersect", self.profile(L), self.profile(out.as_lattice()), n
            )
        return out

    def verify_node_bound(self, sub: Sublattice, bound: GuaranteeBound) -> None:
        if not gamma_sq_within(sub, bound):
            raise InvariantViolation(
                "output density exceeded its proven guarantee",
                {
                    "formula_id": bound.formula_id,
                    "n": bound.n,
                    "ell": bound.ell,
                    "tau": bound.tau,
                    "path": list(self.path),
                },
            )


# ---------------------------------------------------------------------------
# rank-1 recursion (oracle rank k, depth parameter tau)
# ---------------------------------------------------------------------------


def hsvp_recursive(
    L: Lattice,
    tau: int,
    params: ReductionParams,
    *,
    stats: Optional[RunStats] = None,
    trace: Optional[IO[str]] = None,
) -> Sublattice:
    if params.mode != "hsvp2hsvp":
        raise InvalidParams(f"params.mode is {params.mode!r}, expected 'hsvp2hsvp'")
    if tau < 0:
        raise InvalidParams("tau must be >= 0")
    n, k = L.rank, params.k
    if n < k:
        raise InvalidParams(f"rank(L) = {n} is below the oracle rank k = {k}")
    run = _Run(params, stats if stats is not None else RunStats(), trace)
    # each edge lowers (n - k) + tau by exactly one
    run.path_limit = (n - k) + tau + 1
    return _hsvp_node(run, L, tau)


def _hsvp_node(run: _Run, L: Lattice, tau: int) -> Sublattice:
    n, k = L.rank, run.params.k
    run.enter(n, 1, tau)
    work, back, extra = run.node_lattice(L)
    bits = run.see_basis(work.basis)

    if tau == 0:
        red = lll_reduce(work)
        run.stats.lll_calls += 1
        out_w = Sublattice(work, (red.transform_int_rows()[0],))
        action = "lll"
    elif n == k:
        out_w = hsvp_oracle(work, run.params.max_oracle_rank)
        run.stats.oracle_calls += 1
        run.stats.lll_calls += 1  # the enumeration preprocesses with one LLL run
        action = "oracle"
    else:
        D = run.checked_dual(work, n)
        w = _hsvp_node(run, D, tau - 1)
        Lpp = run.checked_intersect(work, w, n)
        y = _hsvp_node(run, Lattice(Lpp.basis_matrix()), tau)
        out_w = Sublattice(work, _imatmul(y.coeffs, Lpp.coeffs))
        action = "recurse"

    run.verify_node_bound(out_w, theorem_bound("sec2", n, 1, tau, k))
    run.record("hsvp2hsvp", n, 1, tau, action, bits, out_w, extra)
    run.exit()
    return run.to_parent(L, out_w, back)


# ---------------------------------------------------------------------------
# rank-ell recursion with a rank-k sublattice oracle
# ---------------------------------------------------------------------------


def dsp_to_dsp(
    L: Lattice,
    ell: int,
    tau: int,
    params: ReductionParams,
    *,
    stats: Optional[RunStats] = None,
    trace: Optional[IO[str]] = None,
) -> Sublattice:
    if params.mode != "dsp2dsp":
        raise InvalidParams(f"params.mode is {params.mode!r}, expected 'dsp2dsp'")
    n, k = L.rank, params.k
    if not n >= k >= 10:
        raise InvalidParams(f"need rank(L) >= k >= 10, got n={n}, k={k}")
    if not 1 <= ell < n:
        raise InvalidParams(f"need 1 <= ell < n, got ell={ell}, n={n}")
    if tau < 0:
        raise InvalidParams("tau must be >= 0")
    run = _Run(params, stats if stats is not None else RunStats(), trace)
    run.path_limit = 2 * tau + math.ceil(20 * math.log2(n - k + 2)) + 6
    return _dsp_dsp_node(run, L, ell, tau, after_dual=False)


def _dsp_dsp_node(run: _Run, L: Lattice, ell: int, tau: int, after_dual: bool) -> Sublattice:
    n, k = L.rank, run.params.k
    run.enter(n, ell, tau)
    if not 1 <= ell < n or n < k:
        raise InvariantViolation(
            "node parameters left the valid region", {"path": list(run.path)}
        )
    work, back, extra = run.node_lattice(L)
    bits = run.see_basis(work.basis)

    if 2 * ell > n:  # duality step
        if after_dual:
            raise InvariantViolation(
                "two consecutive duality steps", {"path": list(run.path)}
            )
        run.stats.duality_steps += 1
        D = run.checked_dual(work, n)
        M = _dsp_dsp_node(run, D, n - ell, tau, after_dual=True)
        out_w = run.checked_intersect(work, M, n)
        action = "dual"
    elif n == k:
        out_w = lll_dsp_oracle(work, ell)
        run.stats.oracle_calls += 1
        run.stats.lll_calls += 1
        action = "oracle"
    elif tau == 0:
        out_w = lll_dsp_oracle(work, ell)
        run.stats.lll_calls += 1
        action = "lll"
    else:
        ell_star = -((k - n) // 20)  # ceil((n-k)/20); n > k here
        D = run.checked_dual(work, n)
        M = _dsp_dsp_node(run, D, ell_star, tau - 1, after_dual=False)
        Lpp = run.checked_intersect(work, M, n)
        if ell >= Lpp.rank:
            raise InvariantViolation(
                "continuation child has no room for the requested rank",
                {"path": list(run.path), "child_rank": Lpp.rank},
            )
        S = _dsp_dsp_node(run, Lattice(Lpp.basis_matrix()), ell, tau, after_dual=False)
        out_w = Sublattice(work, _imatmul(S.coeffs, Lpp.coeffs))
        action = "recurse"

    run.verify_node_bound(out_w, theorem_bound("thm4", n, ell, tau, k))
    run.record("dsp2dsp", n, ell, tau, action, bits, out_w, extra)
    run.exit()
    return run.to_parent(L, out_w, back)


# ---------------------------------------------------------------------------
# rank-ell recursion with a rank-k shortest-vector oracle only
# ---------------------------------------------------------------------------


def dsp_to_hsvp(
    L: Lattice,
    ell: int,
    tau: int,
    params: ReductionParams,
    *,
    stats: Optional[RunStats] = None,
    trace: Optional[IO[str]] = None,
) -> Sublattice:
    if params.mode != "dsp2hsvp":
        raise InvalidParams(f"params.mode is {params.mode!r}, expected 'dsp2hsvp'")
    n, k = L.rank, params.k
    if not n >= k >= 10:
        raise InvalidParams(f"need rank(L) >= k >= 10, got n={n}, k={k}")
    if not 1 <= ell <= n - k + 1:
        raise InvalidParams(
            f"need 1 <= ell <= n - k + 1 = {n - k + 1}, got ell={ell}"
        )
    if tau < 0:
        raise InvalidParams("tau must be >= 0")
    run = _Run(params, stats if stats is not None else RunStats(), trace)
    run.path_limit = 2 * tau + math.ceil(20 * math.log2(n + 2)) + 8
    return _dsp_hsvp_node(run, L, ell, tau, after_dual=False)


def _dsp_hsvp_duality_fires(n: int, ell: int, k: int) -> bool:
    # max{1, (n-k)/5} < ell < n/2,  integer-exact
    cond1 = ell >= 2 and 5 * ell > n - k and 2 * ell < n
    # ell >= n - max{1, (n-k)/10}, integer-exact
    if n - k <= 10:
        cond2 = ell >= n - 1
    else:
        cond2 = 10 * ell >= 9 * n + k
    return cond1 or cond2


def _dsp_hsvp_node(run: _Run, L: Lattice, ell: int, tau: int, after_dual: bool) -> Sublattice:
    n, k = L.rank, run.params.k
    run.enter(n, ell, tau)
    if min(ell, n - ell) > n - k + 1:
        raise InvariantViolation(
            "min{ell, n-ell} exceeded n-k+1 at a node", {"path": list(run.path)}
        )
    if not 1 <= ell < n or n < k:
        raise InvariantViolation(
            "node parameters left the valid region", {"path": list(run.path)}
        )
    work, back, extra = run.node_lattice(L)
    bits = run.see_basis(work.basis)

    if _dsp_hsvp_duality_fires(n, ell, k):
        if after_dual:
            raise InvariantViolation(
                "two consecutive duality steps", {"path": list(run.path)}
            )
        run.stats.duality_steps += 1
        D = run.checked_dual(work, n)
        M = _dsp_hsvp_node(run, D, n - ell, tau, after_dual=True)
        out_w = run.checked_intersect(work, M, n)
        action = "dual"
    elif n == k and ell == 1:
        out_w = hsvp_oracle(work, run.params.max_oracle_rank)
        run.stats.oracle_calls += 1
        run.stats.lll_calls += 1
        action = "oracle"
    elif tau == 0:
        out_w = lll_dsp_oracle(work, ell)
        run.stats.lll_calls += 1
        action = "lll"
    else:
        ell_star = -((k - n) // 20)  # ceil((n-k)/20); n > k here (n == k forces
        # ell in {1, k-1} by the invariant, handled by the two branches above)
        b = 1 if 2 * ell < n else 0
        D = run.checked_dual(work, n)
        M = _dsp_hsvp_node(run, D, ell_star, tau - b, after_dual=False)
        Lpp = run.checked_intersect(work, M, n)
        n_left = Lpp.rank
        if 2 * ell < n and 2 * ell >= n_left:
            # the proofs argue this configuration is unreachable; if it ever
            # fires on some input, that is a reportable finding, not a fixup
            raise InvariantViolation(
                "continuation child crossed n/2 from below",
                {"path": list(run.path), "child_rank": n_left},
            )
        S = _dsp_hsvp_node(run, Lattice(Lpp.basis_matrix()), ell, tau, after_dual=False)
        out_w = Sublattice(work, _imatmul(S.coeffs, Lpp.coeffs))
        action = "recurse"

    if action == "oracle" and not (n == k and ell == 1):
        raise InvariantViolation(
            "oracle call outside rank-k/ell-1", {"path": list(run.path)}
        )
    if 1 <= ell <= n - k + 1:
        run.verify_node_bound(out_w, theorem_bound("thm5", n, ell, tau, k))
    run.record("dsp2hsvp", n, ell, tau, action, bits, out_w, extra)
    run.exit()
    return run.to_parent(L, out_w, back)
