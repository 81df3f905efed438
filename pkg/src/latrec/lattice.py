"""Lattices over Q with duality and orthogonal intersection/projection.

Conventions: rows of the basis matrix are the lattice vectors; a Sublattice is
stored as an integer coefficient matrix against its parent's basis, so exact
membership and primitivity questions reduce to integer linear algebra (row
Hermite normal form with a tracked unimodular transform).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DegenerateBasis,
    InvalidRank,
    InvariantViolation,
    NotASublattice,
    NotPrimitive,
    RankMismatch,
)
from .exactnum import RatMatrix, Rational, gram_det_sq, inverse, rat, rat_str

# ---------------------------------------------------------------------------
# integer linear algebra (row HNF and friends)
# ---------------------------------------------------------------------------


def hnf_with_transform(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form H = U @ A with U unimodular.

    H is in echelon form with positive pivots and entries above each pivot
    reduced to [0, pivot); zero rows sink to the bottom.  Deterministic.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        # gcd-eliminate column c below row r
        while True:
            pivots = [i for i in range(r, m) if A[i][c] != 0]
            if not pivots:
                break
            i0 = min(pivots, key=lambda i: (abs(A[i][c]), i))
            if i0 != r:
                A[r], A[i0] = A[i0], A[r]
                U[r], U[i0] = U[i0], U[r]
            if len(pivots) == 1:
                break
            p = A[r][c]
            for i in range(r + 1, m):
                if A[i][c] != 0:
                    q = A[i][c] // p  # floor division keeps remainders in [0, |p|)
                    if q:
                        Ai, Ar = A[i], A[r]
                        for t in range(n):
                            Ai[t] -= q * Ar[t]
                        Ui, Ur = U[i], U[r]
                        for t in range(m):
                            Ui[t] -= q * Ur[t]
        if A[r][c] != 0:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
                U[r] = [-x for x in U[r]]
            p = A[r][c]
            for i in range(r):
                q = A[i][c] // p
                if q:
                    Ai, Ar = A[i], A[r]
                    for t in range(n):
                        Ai[t] -= q * Ar[t]
                    Ui, Ur = U[i], U[r]
                    for t in range(m):
                        Ui[t] -= q * Ur[t]
            r += 1
    return A, U


def hnf(rows: list[list[int]]) -> list[list[int]]:
    H, _ = hnf_with_transform(rows)
    return H


def _pivot_cols(H: list[list[int]]) -> list[int]:
    cols = []
    for row in H:
        p = next((j for j, x in enumerate(row) if x != 0), None)
        if p is not None:
            cols.append(p)
    return cols


def int_rank(rows: list[list[int]]) -> int:
    return len(_pivot_cols(hnf(rows)))


def left_kernel_int(rows: list[list[int]]) -> list[list[int]]:
    """Basis of {w : w @ A = 0} over Z (rows of the transform at zero HNF rows)."""
    H, U = hnf_with_transform(rows)
    return [U[i] for i in range(len(H)) if all(x == 0 for x in H[i])]


def int_solve(rows: list[list[int]], v: list[int]) -> list[int] | None:
    """Integer z with z @ rows = v, or None.  rows need not be independent."""
    H, U = hnf_with_transform(rows)
    piv = _pivot_cols(H)
    res = list(map(int, v))
    w = [0] * len(rows)
    for i, c in enumerate(piv):
        if res[c] % H[i][c] != 0:
            return None
        w[i] = res[c] // H[i][c]
        if w[i]:
            for t in range(len(res)):
                res[t] -= w[i] * H[i][t]
    if any(res):
        return None
    m = len(rows)
    return [sum(w[i] * U[i][j] for i in range(m)) for j in range(m)]


def saturate_int(Z: list[list[int]]) -> list[list[int]]:
    """Basis of span_Q(rows of Z) ∩ Z^n (the saturation of the row lattice)."""
    n = len(Z[0])
    # rows orthogonal to span(Z): left kernel of Z^T
    Zt = [[Z[i][j] for i in range(len(Z))] for j in range(n)]
    N = left_kernel_int(Zt)
    if not N:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Nt = [[N[i][j] for i in range(len(N))] for j in range(n)]
    return left_kernel_int(Nt)


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------


class Lattice:
    """A rank-n lattice in Q^d given by n independent basis rows."""

    __slots__ = ("basis", "_det_sq", "_inv_gram")

    def __init__(self, basis: RatMatrix | list):
        if not isinstance(basis, RatMatrix):
            basis = RatMatrix(basis)
        if basis.nrows > basis.ncols:
            raise DegenerateBasis(f"{basis.nrows} rows cannot be independent in dimension {basis.ncols}")
        self.basis = basis
        self._det_sq = gram_det_sq(basis)  # raises DegenerateBasis on dependent rows
        self._inv_gram = None

    @property
    def rank(self) -> int:
        return self.basis.nrows

    @property
    def ambient_dim(self) -> int:
        return self.basis.ncols

    def det_sq(self) -> Rational:
        return self._det_sq

    def inv_gram(self) -> RatMatrix:
        if self._inv_gram is None:
            self._inv_gram = inverse(self.basis.gram())
        return self._inv_gram

    def __repr__(self):
        return f"Lattice(rank={self.rank}, ambient_dim={self.ambient_dim})"

    def span_coords(self, M: RatMatrix) -> RatMatrix | None:
        """Exact X with X @ basis = M, or None if some row leaves span(L)."""
        X = M @ self.basis.transpose() @ self.inv_gram()
        return X if (X @ self.basis) == M else None

    def coords_of(self, vector) -> tuple | None:
        X = self.span_coords(RatMatrix([vector]))
        return X[0] if X is not None else None

    def contains(self, vector) -> tuple | None:
        """Integer coefficients of `vector` in this lattice, or None."""
        x = self.coords_of(vector)
        if x is None:
            return None
        z = []
        for xi in x:
            if xi.denominator != 1:
                return None
            z.append(int(xi))
        return tuple(z)

    def contains_rows(self, M: RatMatrix) -> list[tuple] | None:
        X = self.span_coords(M)
        if X is None:
            return None
        out = []
        for row in X:
            if any(x.denominator != 1 for x in row):
                return None
            out.append(tuple(int(x) for x in row))
        return out

    def same_lattice(self, other: "Lattice") -> bool:
        if self.rank != other.rank:
            return False
        return (
            other.contains_rows(self.basis) is not None
            and self.contains_rows(other.basis) is not None
        )


@dataclass(frozen=True)
class Sublattice:
    """Integer row combinations of a parent lattice's basis."""

    parent: Lattice
    coeffs: tuple

    def __post_init__(self):
        Z = tuple(tuple(int(x) for x in row) for row in self.coeffs)
        object.__setattr__(self, "coeffs", Z)
        if not Z or len(Z) > self.parent.rank:
            raise RankMismatch(f"need 1..{self.parent.rank} coefficient rows, got {len(Z)}")
        if any(len(r) != self.parent.rank for r in Z):
            raise RankMismatch("coefficient rows must have one entry per parent basis vector")
        if int_rank([list(r) for r in Z]) != len(Z):
            raise DegenerateBasis("coefficient rows are linearly dependent")

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def basis_matrix(self) -> RatMatrix:
        return RatMatrix(self.coeffs) @ self.parent.basis

    def as_lattice(self) -> Lattice:
        return Lattice(self.basis_matrix())

    def det_sq(self) -> Rational:
        return gram_det_sq(self.basis_matrix())


@dataclass(frozen=True)
class DensityRatio:
    """gamma(L, L')^2 kept as the exact pair (det(L')^2, det(L)^2) plus ranks.

    gamma^2 = det_sq_sub / det_sq_parent^(ell/n); all comparisons clear the
    fractional exponent by cross-powering, so they are exact.
    """

    det_sq_sub: Rational
    det_sq_parent: Rational
    ell: int
    n: int

    def le_sq(self, rho_sq) -> bool:
        """gamma^2 <= rho_sq for a Rational rho_sq, exactly."""
        rho_sq = rat(rho_sq)
        return self.det_sq_sub ** self.n <= rho_sq ** self.n * self.det_sq_parent ** self.ell

    def pow_pair(self) -> tuple:
        """(det_sq_sub^n, det_sq_parent^ell): gamma^(2n) as an exact quotient."""
        return (self.det_sq_sub ** self.n, self.det_sq_parent ** self.ell)

    def eq_gamma_sq(self, other: "DensityRatio") -> bool:
        a1, b1 = self.pow_pair()
        a2, b2 = other.pow_pair()
        return a1 ** other.n * b2 ** self.n == a2 ** self.n * b1 ** other.n

    def log2(self) -> float:
        """Float log2(gamma^2), for traces and reports only."""
        from .bounds import log2_rational_hi, log2_rational_lo

        hi = log2_rational_hi(self.det_sq_sub) - self.ell * log2_rational_lo(self.det_sq_parent) / self.n
        lo = log2_rational_lo(self.det_sq_sub) - self.ell * log2_rational_hi(self.det_sq_parent) / self.n
        return (hi + lo) / 2.0


def density_ratio(Lp: Sublattice) -> DensityRatio:
    return DensityRatio(Lp.det_sq(), Lp.parent.det_sq(), Lp.rank, Lp.parent.rank)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def dual(L: Lattice) -> Lattice:
    """Dual basis rows (B B^T)^{-1} B; spans span(L), pairs integrally with L."""
    out = Lattice(L.inv_gram() @ L.basis)
    if out._det_sq * L._det_sq != 1:
        raise InvariantViolation("dual determinant identity failed", {"det_sq": str(L._det_sq)})
    return out


def generating_set_to_basis(vectors: RatMatrix, rank: int) -> RatMatrix:
    """A basis (rank rows) of the lattice generated by the given vectors."""
    int_rows, q = vectors.to_int_rows()
    H = hnf(int_rows)
    rows = [r for r in H if any(r)]
    if len(rows) != rank:
        raise RankMismatch(f"generating set has rank {len(rows)}, expected {rank}")
    return RatMatrix(rows).scaled(rat(1, q))


def _dual_coeffs(L: Lattice, vectors: RatMatrix) -> list[list[int]]:
    """Coefficients of the given vectors w.r.t. dual(L)'s basis rows.

    Uses the identity D B^T = I: if w = z D then z = w B^T.  Raises
    NotASublattice unless every vector is genuinely in dual(L) (integer
    pairings AND inside span(L)).
    """
    Zs = vectors @ L.basis.transpose()
    Z = []
    for i in range(vectors.nrows):
        row = []
        for x in Zs[i]:
            if x.denominator != 1:
                raise NotASublattice("vector has non-integer pairing with the primal basis")
            row.append(int(x))
        Z.append(row)
    recon = RatMatrix(Z) @ L.inv_gram() @ L.basis
    if recon != vectors:
        raise NotASublattice("vector lies outside span(L)")
    return Z


def is_primitive(Lp: Sublattice) -> bool:
    """True iff Lp = parent ∩ span(Lp) (all elementary divisors of coeffs are 1)."""
    Z = [list(r) for r in Lp.coeffs]
    S = saturate_int(Z)
    return all(int_solve(Z, s) is not None for s in S)


def primitivize(Lp: Sublattice) -> Sublattice:
    """parent ∩ span(Lp): same span, index 1, never larger determinant."""
    S = saturate_int([list(r) for r in Lp.coeffs])
    return Sublattice(Lp.parent, tuple(tuple(r) for r in S))


def _projector_orthogonal(W: RatMatrix) -> RatMatrix:
    """d x d projector onto the orthogonal complement of the row span of W."""
    d = W.ncols
    WtPW = W.transpose() @ inverse(W.gram()) @ W
    rows = []
    for i in range(d):
        rows.append(tuple((rat(1) if i == j else rat(0)) - WtPW[i][j] for j in range(d)))
    return RatMatrix(rows)


def intersect_orthogonal(L: Lattice, Lp: Sublattice) -> Sublattice:
    """L ∩ (span Lp)^⊥ for a primitive sublattice Lp of dual(L).

    Computed through duality: (L ∩ Lp^⊥)* = Π_{Lp^⊥}(L*), i.e. project the
    dual basis, rebuild a basis of the projection, and dualize back.  The
    result is returned as a (primitive) sublattice of L.
    """
    n = L.rank
    ell = Lp.rank
    if ell >= n:
        raise InvalidRank(f"sublattice rank must satisfy ell < n, got ell={ell}, n={n}")
    W = Lp.basis_matrix()
    Z_dual = _dual_coeffs(L, W)  # also validates membership in dual(L)
    D = dual(L)
    if not is_primitive(Sublattice(D, tuple(tuple(r) for r in Z_dual))):
        raise NotPrimitive("sublattice is not primitive in dual(L); primitivize it first")
    P = _projector_orthogonal(W)
    projected = D.basis @ P
    H = generating_set_to_basis(projected, n - ell)
    R = inverse(H.gram()) @ H  # dual of the projected lattice, inside span(Lp)^perp
    Z = L.contains_rows(R)
    if Z is None:
        raise InvariantViolation(
            "dual-of-projection produced a vector outside L", {"n": n, "ell": ell}
        )
    out = Sublattice(L, tuple(Z))
    if out.det_sq() != L.det_sq() * gram_det_sq(W):
        raise InvariantViolation(
            "determinant identity det(L ∩ Lp^⊥)² = det(L)²·det(Lp)² failed",
            {"n": n, "ell": ell},
        )
    return out


def project_orthogonal(L: Lattice, Lp: Sublattice) -> Lattice:
    """Π_{(span Lp)^⊥}(L) for a sublattice Lp ⊆ L (projection of a lattice is a lattice)."""
    n = L.rank
    if Lp.rank >= n:
        raise InvalidRank(f"projection along a rank-{Lp.rank} sublattice of a rank-{n} lattice is empty")
    W = Lp.basis_matrix()
    if L.contains_rows(W) is None:
        raise NotASublattice("projection direction is not a sublattice of L")
    P = _projector_orthogonal(W)
    projected = L.basis @ P
    return Lattice(generating_set_to_basis(projected, n - Lp.rank))


# ---------------------------------------------------------------------------
# JSON form (shared with the CLI)
# ---------------------------------------------------------------------------


def lattice_to_json(L: Lattice) -> dict:
    return {
        "rank": L.rank,
        "ambient_dim": L.ambient_dim,
        "basis": [[rat_str(x) for x in row] for row in L.basis],
    }


def lattice_from_json(obj: dict) -> Lattice:
    basis = RatMatrix([[rat(x) for x in row] for row in obj["basis"]])
    L = Lattice(basis)
    if L.rank != obj["rank"] or L.ambient_dim != obj["ambient_dim"]:
        raise RankMismatch(
            f"declared rank/ambient_dim {obj['rank']}/{obj['ambient_dim']} "
            f"do not match the basis ({L.rank}/{L.ambient_dim})"
        )
    return L
