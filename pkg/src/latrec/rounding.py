"""Bit-size accounting, basis rescaling, and basis rounding.

Three layers of representation control live here:

* SizeProfile / beta_step_bounds: the (q, Delta, beta) accounting that shows
  duality and orthogonal-intersection steps keep basis bit sizes polynomially
  bounded.  beta(L) = log2 max{det(L)^(1/rank), q(L)} with q(L) the smallest
  q > 0 such that L is contained in Z^n / q.  Each monitored step satisfies
  beta' <= beta + n^2/2 (intersection, and q never grows) or
  beta* <= 4n * beta (duality); both checks run in exact cross-powered form.

* rescale_map / apply_rescale: the gap-flattening map that divides the i-th
  Gram-Schmidt vector by an integer alpha_i (alpha_1 = 1, nondecreasing,
  alpha_i >= ||gs b_i|| / (gamma^i ||b_1||)).  It preserves the mu
  coefficients exactly, hence preserves LLL-reducedness, and bounds the
  spread of the Gram-Schmidt profile by powers of 2*gamma.

* round_basis / lift_solution: replaces a basis B of L by an integer basis
  B' of a *different* lattice whose total bitlength is at most m', such that
  any dense rank-ell sublattice found in L(B') lifts back (by reusing its
  integer coefficients) to a sublattice of L whose density ratio is nearly
  the same.  Truncation toward zero of the irrational entries of the scaled
  basis is done exactly: |trunc(y * M / ||b_1||)| = isqrt(floor(y^2 M^2 /
  ||b_1||^2)), so no square root is ever formed.

Constant profiles: the "reference" profile (M = 2^(m'-2n^5), rescale parameter
n^(2n^3), floor m' >= 10n^5) is priced for proofs, not machines, and is only
exercised at n <= 3.  The "scaled" profile (M = 2^(m'-c1), rescale parameter
2^c2) shares every code path and is sized so that desk-scale experiments
keep the lifted density within (1 + 2^-20) of the rounded one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .bounds import log2_int_hi, log2_rational_hi, round_up
from .errors import (
    DegenerateBasis,
    InvalidParams,
    InvariantViolation,
    RankMismatch,
    SizeTooSmall,
)
from .exactnum import RatMatrix, Rational, bitlength, gram_det_sq, gso, norm_sq, rat
from .lattice import Lattice, Sublattice
from .lll import LllBasis, assert_lll_conditions, lll_reduce
from .reduce import _imatmul

# ---------------------------------------------------------------------------
# size profiles (q, Delta, beta)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SizeProfile:
    """Exact size data for one lattice; float fields are rounded-up views.

    det_sq and rank carry the exact state so that step bounds can be checked
    without ever leaving rational arithmetic.
    """

    q: int
    log2_delta: float
    log2_beta: float
    det_sq: Rational
    rank: int


def size_profile(L: Union[Lattice, RatMatrix]) -> SizeProfile:
    B = L.basis if isinstance(L, Lattice) else L
    q = B.denominator_lcm()
    det_sq = L.det_sq() if isinstance(L, Lattice) else gram_det_sq(B)
    ell = B.nrows
    if det_sq == 1:
        log2_delta = 0.0
    else:
        log2_delta = round_up(log2_rational_hi(det_sq) / (2 * ell))
    # beta = log2 of the exact max of Delta and q
    delta_is_max = det_sq > rat(q) ** (2 * ell)
    if delta_is_max:
        log2_beta = log2_delta
    else:
        log2_beta = 0.0 if q == 1 else log2_int_hi(q)
    return SizeProfile(q=q, log2_delta=log2_delta, log2_beta=log2_beta, det_sq=det_sq, rank=ell)


def _le_delta_delta(a: SizeProfile, b: SizeProfile, two_exp: int, factor: int) -> bool:
    """Delta_a <= 2^(two_exp/2) * Delta_b^factor, exactly (cross-powered)."""
    la, lb = a.rank, b.rank
    return a.det_sq ** lb <= rat(2) ** (two_exp * la * lb) * b.det_sq ** (factor * la)


def _le_delta_q(a: SizeProfile, qb: int, two_exp: int, factor: int) -> bool:
    """Delta_a <= 2^(two_exp/2) * qb^factor, exactly."""
    la = a.rank
    return a.det_sq <= rat(2) ** (two_exp * la) * rat(qb) ** (2 * factor * la)


def _le_q_delta(qa: int, b: SizeProfile, two_exp: int, factor: int) -> bool:
    """qa <= 2^(two_exp/2) * Delta_b^factor, exactly."""
    lb = b.rank
    return rat(qa) ** (2 * lb) <= rat(2) ** (two_exp * lb) * b.det_sq ** factor


def beta_step_bounds(before: SizeProfile, op: str, after: SizeProfile, n: int) -> bool:
    """Check the per-step size bound: true iff the proven inequality holds.

    op = "intersect": q may not grow, and beta_after <= beta_before + n^2/2.
    op = "dual":      beta_after <= 4n * beta_before.
    All comparisons are exact (squared and cross-powered; the half-integer
    2^(n^2/2) disappears after squaring).
    """
    if op == "intersect":
        if after.q > before.q:
            return False
        # max{Delta_a, q_a} <= 2^(n^2/2) * max{Delta_b, q_b}:
        # check both left candidates against the exact right max.
        b_delta_max = before.det_sq > rat(before.q) ** (2 * before.rank)
        if b_delta_max:
            return _le_delta_delta(after, before, n * n, 1) and _le_q_delta(
                after.q, before, n * n, 1
            )
        return _le_delta_q(after, before.q, n * n, 1) and after.q ** 2 <= 2 ** (
            n * n
        ) * before.q ** 2
    if op == "dual":
        b_delta_max = before.det_sq > rat(before.q) ** (2 * before.rank)
        if b_delta_max:
            return _le_delta_delta(after, before, 0, 4 * n) and _le_q_delta(
                after.q, before, 0, 4 * n
            )
        return (
            _le_delta_q(after, before.q, 0, 4 * n)
            and after.q <= before.q ** (4 * n)
        )
    raise InvalidParams(f"unknown profile step {op!r}, expected 'dual' or 'intersect'")


def dual_q_bound(before: SizeProfile, after: SizeProfile, n: int) -> bool:
    """q(dual) <= (q * Delta)^(2n), exactly; the raw bound behind the 4n factor."""
    lb = before.rank
    return (
        rat(after.q) ** lb
        <= rat(before.q) ** (2 * n * lb) * before.det_sq ** n
    )


def lll_entries_bounded(basis: RatMatrix) -> bool:
    """Entry bound for LLL-reduced bases: q||b_j|| <= q^n 2^(n^2/4) det(L).

    Checked exactly by raising both sides to the 4th power.
    """
    q = basis.denominator_lcm()
    n = basis.nrows
    det_sq = gram_det_sq(basis)
    rhs = rat(q) ** (4 * n) * rat(2) ** (n * n) * det_sq ** 2
    for row in basis:
        if rat(q) ** 4 * norm_sq(row) ** 2 > rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# rescaling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RescaleMap:
    """Per-index divisors for the Gram-Schmidt vectors: gs b_i -> gs b_i / alpha_i."""

    alphas: tuple[int, ...]
    gamma: Rational

    def __post_init__(self):
        object.__setattr__(self, "gamma", rat(self.gamma))
        a = tuple(int(x) for x in self.alphas)
        object.__setattr__(self, "alphas", a)
        if not a or a[0] != 1:
            raise InvalidParams("alpha_1 must be 1")
        if any(x <= 0 for x in a) or any(x > y for x, y in zip(a, a[1:])):
            raise InvalidParams("alphas must be positive and nondecreasing")


def _ceil_sqrt_ratio(num: int, den: int) -> int:
    """ceil(sqrt(num/den)) for positive integers, exactly."""
    t = math.isqrt(num // den)
    while t * t * den < num:
        t += 1
    return t


def rescale_map(B: LllBasis, gamma) -> RescaleMap:
    """alphas with alpha_i = max{alpha_{i-1}, ceil(||gs b_i|| / (gamma^i ||b_1||))}.

    The ceiling of the irrational ratio is found exactly on squared
    quantities: the minimal t with t^2 gamma^(2i) ||b_1||^2 >= ||gs b_i||^2.
    """
    g = rat(gamma)
    if g < 2:
        raise InvalidParams("rescale parameter must be >= 2")
    r = B.gso.gs_norms_sq
    r1 = r[0]
    alphas = [1]
    for i0 in range(1, len(r)):
        x = r[i0] / (g ** (2 * (i0 + 1)) * r1)
        t = _ceil_sqrt_ratio(int(x.numerator), int(x.denominator))
        alphas.append(max(alphas[-1], t, 1))
    return RescaleMap(alphas=tuple(alphas), gamma=g)


def apply_rescale(B: LllBasis, map: RescaleMap) -> LllBasis:
    """New basis with b'_j = sum_{i<=j} mu_{i,j} gs b_i / alpha_i.

    The mu coefficients are untouched and each Gram-Schmidt norm is divided
    by exactly alpha_i, so the result is LLL-reduced whenever B is (checked
    exactly, not trusted).  The transform is the identity: the output basis
    spans a different lattice and stands on its own.
    """
    n = B.basis.nrows
    if len(map.alphas) != n:
        raise InvalidParams(f"map has {len(map.alphas)} divisors for a rank-{n} basis")
    gs_rows = B.gso.gs_rows
    mu = B.gso.mu
    rows = []
    for j in range(n):
        acc = [x / map.alphas[j] for x in gs_rows[j]]
        for i in range(j):
            m = mu[j][i] / map.alphas[i]
            acc = [a + m * b for a, b in zip(acc, gs_rows[i])]
        rows.append(acc)
    out = RatMatrix(rows)
    g = gso(out)
    for i in range(n):
        if g.gs_norms_sq[i] * map.alphas[i] ** 2 != B.gso.gs_norms_sq[i]:
            raise InvariantViolation(
                "rescaling failed to divide a Gram-Schmidt norm exactly", {"index": i}
            )
        if g.mu[i] != B.gso.mu[i]:
            raise InvariantViolation(
                "rescaling changed a mu coefficient", {"index": i}
            )
    assert_lll_conditions(g, "rescaled basis")
    return LllBasis(basis=out, gso=g, transform=RatMatrix.identity(n))


# ---------------------------------------------------------------------------
# basis rounding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RoundProfile:
    """Constant choices for round_basis: M = 2^(m' - m_offset), rescale gamma."""

    floor: int
    m_offset: int
    gamma: Rational
    name: str


def reference_profile(n: int) -> RoundProfile:
    """The proof-priced constants; astronomically conservative, use n <= 3."""
    return RoundProfile(
        floor=10 * n ** 5,
        m_offset=2 * n ** 5,
        gamma=rat(max(n, 2)) ** (2 * n ** 3),
        name="reference",
    )


def scaled_profile(
    n: int, d: int, c2: int = 2, mexp: Optional[int] = None
) -> tuple[RoundProfile, int]:
    """Desk-scale constants plus a suggested m'.

    mexp is the bit budget per rounded entry's leading magnitude (log2 M);
    the default leaves ample headroom for the (1 + 2^-20) lifted-density
    check at n <= 10.  Returns (profile, m_prime) with m_prime sized so the
    total encoding of the n x d rounded basis fits.
    """
    if mexp is None:
        mexp = 160 + n * (c2 + 2)
    per_entry = mexp + n * (c2 + 1) + 4
    m_prime = n * d * per_entry
    return (
        RoundProfile(floor=m_prime - mexp + 64, m_offset=m_prime - mexp, gamma=rat(2) ** c2, name="scaled"),
        m_prime,
    )


@dataclass(frozen=True)
class RoundedBasis:
    """Output of round_basis: the rounded basis plus the data needed to lift.

    b_prime spans the rounded lattice (bitlength <= m_prime).  Its rows
    correspond one-to-one with the rows of the LLL-reduced input basis, so a
    coefficient matrix Z over b_prime lifts through transform (the LLL
    unimodular map) to coefficients over the original basis.
    """

    b_prime: RatMatrix
    lattice: Lattice
    transform: tuple[tuple[int, ...], ...]
    m_prime: int
    corner_case: bool


def _trunc_scaled_row(row: Sequence, scale_sq: Rational) -> list:
    """trunc(y * sqrt(scale_sq)) for each y, toward zero, exactly."""
    out = []
    for y in row:
        if y == 0:
            out.append(rat(0))
            continue
        sq = y * y * scale_sq
        t = math.isqrt(int(sq.numerator) // int(sq.denominator))
        out.append(rat(t if y > 0 else -t))
    return out


def round_basis(
    B: RatMatrix, ell: int, m_prime: int, profile: Optional[RoundProfile] = None
) -> RoundedBasis:
    """Round B to an integer basis of total bitlength <= m_prime.

    Steps: LLL-reduce; if the leading ell rows are already at least as dense
    as the whole lattice (corner case), emit the diagonal basis
    (e_1..e_ell, M e_{ell+1}..M e_n); otherwise flatten the Gram-Schmidt
    profile with the rescale map, scale so ||b_1|| becomes exactly M, and
    truncate every entry toward zero.
    """
    n = B.nrows
    if not 1 <= ell <= n:
        raise InvalidParams(f"ell must be in 1..{n}, got {ell}")
    if profile is None:
        profile = reference_profile(n) if n <= 3 else scaled_profile(n, B.ncols)[0]
    if m_prime < profile.floor:
        raise SizeTooSmall(
            f"m_prime {m_prime} is below the {profile.name}-profile floor {profile.floor}"
        )
    M = rat(2) ** (m_prime - profile.m_offset)
    L = Lattice(B)
    red = lll_reduce(L)
    U = red.transform_int_rows()

    lead = RatMatrix(red.basis.data[:ell])
    corner = gram_det_sq(lead) ** n <= L.det_sq() ** ell
    if corner:
        rows = [[M if (i >= ell and i == j) else (1 if i == j else 0) for j in range(n)] for i in range(n)]
        b_prime = RatMatrix(rows)
    else:
        rescaled = apply_rescale(red, rescale_map(red, profile.gamma))
        # entries of the output are trunc(y * M / ||b_1||); square, floor, isqrt
        scale_sq = M * M / red.gso.gs_norms_sq[0]
        b_prime = RatMatrix([_trunc_scaled_row(row, scale_sq) for row in rescaled.basis])
        try:
            Lattice(b_prime)
        except DegenerateBasis:
            raise SizeTooSmall(
                f"rounded rows collapsed at m_prime {m_prime}; the scale M is too small"
            ) from None
    bits = bitlength(b_prime)
    if bits > m_prime:
        raise SizeTooSmall(
            f"profile {profile.name} cannot fit this basis in {m_prime} bits (needs {bits})"
        )
    return RoundedBasis(
        b_prime=b_prime, lattice=L, transform=U, m_prime=m_prime, corner_case=corner
    )


def lift_solution(rb: RoundedBasis, Z: Sequence[Sequence[int]]) -> Sublattice:
    """Carry coefficients found over the rounded basis back to the original.

    Z's rows are integer coefficient vectors over rb.b_prime's rows; the
    same coefficients over the LLL-reduced input rows give the lifted
    sublattice of the original lattice.
    """
    rows = tuple(tuple(int(x) for x in row) for row in Z)
    n = rb.lattice.rank
    if not rows or len(rows) > n:
        raise RankMismatch(f"need 1..{n} coefficient rows, got {len(rows)}")
    if any(len(r) != n for r in rows):
        raise RankMismatch(f"coefficient rows must have {n} entries")
    return Sublattice(rb.lattice, _imatmul(rows, rb.transform))
