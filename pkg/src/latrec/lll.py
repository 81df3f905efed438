"""Exact-arithmetic LLL reduction and the derived sublattice oracle.

The integer core lives in the compiled/pure kernel; this module clears
denominators, runs the kernel, normalizes signs, and then *proves* the result:
both LLL conditions are re-checked with exact rational arithmetic on every
call, and the sublattice oracle re-checks its density guarantees.  Nothing
here trusts the kernel.

Two Lovász parameters are in play.  Plain reduction uses delta = 3/4 (the
classical polynomial-time setting, and the one the bit-length bounds are
stated for).  The sublattice oracle follows it with a delta = 1 pass, because
its advertised density (4/3)^{ell(n-ell)/4} needs the full-strength exchange
condition: with delta = 3/4 alone a near-critical rank-2 lattice can miss it.
The second pass starts from an already-reduced basis, so it is cheap, and it
terminates unconditionally (each swap strictly decreases a positive integer
Gram determinant).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernel
from .bounds import PowTerm, powprod_le
from .errors import DegenerateBasis, InvalidRank, InvariantViolation
from .exactnum import GsoData, RatMatrix, gso, rat
from .lattice import Lattice, Sublattice, density_ratio

# Default Lovász parameter: all quoted bit-length guarantees assume 3/4.
DELTA_NUM = 3
DELTA_DEN = 4


@dataclass(frozen=True)
class LllBasis:
    """A reduced basis together with its exact GSO and the recorded transform.

    transform is unimodular (integer entries, built from row operations) and
    satisfies transform @ input_basis == basis exactly.
    """

    basis: RatMatrix
    gso: GsoData
    transform: RatMatrix

    def transform_int_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(x) for x in row) for row in self.transform)


def assert_lll_conditions(
    g: GsoData, where: str = "lll", delta_num: int = DELTA_NUM, delta_den: int = DELTA_DEN
) -> None:
    """Exact check of size-reduction and the Lovász condition; loud on failure."""
    n = len(g.gs_norms_sq)
    for i in range(n):
        for j in range(i):
            if 2 * abs(g.mu[i][j]) > 1:
                raise InvariantViolation(
                    "size-reduction violated on a basis claimed reduced",
                    {"where": where, "i": i, "j": j},
                )
    for i in range(n - 1):
        m = g.mu[i + 1][i]
        lhs = rat(delta_num, delta_den) * g.gs_norms_sq[i]
        rhs = g.gs_norms_sq[i + 1] + m * m * g.gs_norms_sq[i]
        if lhs > rhs:
            raise InvariantViolation(
                "exchange condition violated on a basis claimed reduced",
                {"where": where, "i": i, "delta": f"{delta_num}/{delta_den}"},
            )


def _reduce_matrix(B: RatMatrix, delta_num: int, delta_den: int, where: str) -> LllBasis:
    int_rows, _q = B.to_int_rows()
    try:
        red_rows, u_rows = kernel.lll_reduce_int(
            [list(map(int, r)) for r in int_rows], delta_num, delta_den
        )
    except ValueError as e:  # kernel detected dependence the Lattice ctor should bar
        raise DegenerateBasis(str(e)) from e
    # deterministic output: first nonzero coordinate of each vector positive
    for idx, row in enumerate(red_rows):
        lead = next((v for v in row if v != 0), 0)
        if lead < 0:
            red_rows[idx] = [-v for v in row]
            u_rows[idx] = [-v for v in u_rows[idx]]
    transform = RatMatrix(u_rows)
    basis = transform @ B  # scale-invariance: U for q·B reduces B itself
    g = gso(basis)
    assert_lll_conditions(g, where, delta_num, delta_den)
    return LllBasis(basis=basis, gso=g, transform=transform)


def lll_reduce(L: Lattice) -> LllBasis:
    """LLL-reduce the basis of L; same lattice, conditions verified exactly."""
    return _reduce_matrix(L.basis, DELTA_NUM, DELTA_DEN, "lll_reduce")


def lll_dsp_oracle(L: Lattice, ell: int) -> Sublattice:
    """Sublattice spanned by the first ell vectors of a strongly reduced basis.

    Runs delta = 3/4 then delta = 1.  Verified on every call:
    gamma(L, result) ≤ 2^{ell(n-ell)} (the guarantee the recursive reductions
    consume) and the sharper (4/3)^{ell(n-ell)/4} (the planner's value for
    budget-0 cells, provable exactly because of the delta = 1 pass).
    """
    n = L.rank
    if not 1 <= ell <= n:
        raise InvalidRank(f"sublattice rank must be in 1..{n}, got {ell}")
    coarse = _reduce_matrix(L.basis, DELTA_NUM, DELTA_DEN, "lll_dsp_oracle")
    fine = _reduce_matrix(coarse.basis, 1, 1, "lll_dsp_oracle/delta1")
    composed = fine.transform @ coarse.transform
    sub = Sublattice(L, tuple(tuple(int(x) for x in row) for row in composed)[:ell])

    ratio = density_ratio(sub)
    if not ratio.le_sq(rat(2) ** (2 * ell * (n - ell))):
        raise InvariantViolation(
            "reduced-basis density guarantee 2^{ell(n-ell)} failed",
            {"n": n, "ell": ell},
        )
    # gamma ≤ (4/3)^{ell(n-ell)/4}  ⟺  det_sq(sub)^{2n} ≤ (4/3)^{ell(n-ell)n} det_sq(L)^{2ell}
    lhs = [PowTerm(sub.det_sq(), Fraction(2 * n))]
    rhs = [
        PowTerm(rat(4, 3), Fraction(ell * (n - ell) * n)),
        PowTerm(L.det_sq(), Fraction(2 * ell)),
    ]
    if not powprod_le(lhs, rhs):
        raise InvariantViolation(
            "reduced-basis density guarantee (4/3)^{ell(n-ell)/4} failed",
            {"n": n, "ell": ell},
        )
    return sub
