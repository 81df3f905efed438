"""Exact rational scalars and small dense matrices.

Everything correctness-bearing in this package runs on exact rationals; floats
only ever appear in log-domain reporting and in the planner's upward-rounded
cost model.  The scalar type is gmpy2.mpq when available (much faster), with
fractions.Fraction as a drop-in fallback.  Set LATREC_PURE_RATIONAL=1 to force
the Fraction backend.
"""

from __future__ import annotations

import math
import os
from typing import Iterable, NamedTuple, Sequence

from .errors import DegenerateBasis, SingularMatrix

if os.environ.get("LATREC_PURE_RATIONAL"):
    from fractions import Fraction as Rational

    BACKEND = "fraction"
else:
    try:
        from gmpy2 import mpq as Rational

        BACKEND = "gmpy2"
    except ImportError:  # pragma: no cover - gmpy2 is a hard dependency normally
        from fractions import Fraction as Rational

        BACKEND = "fraction"

ZERO = Rational(0)
ONE = Rational(1)


def rat(x, y=None) -> Rational:
    """Coerce ints, strings like "3/4", Fractions or mpqs to the scalar type."""
    if y is not None:
        return Rational(x) / Rational(y)
    if isinstance(x, str):
        return Rational(x)
    if isinstance(x, float):
        raise TypeError("refusing to build an exact rational from a float")
    return Rational(x)


def rat_str(x) -> str:
    """Canonical "p/q" (or "p" for integers) string form."""
    x = Rational(x)
    num, den = x.numerator, x.denominator
    return f"{num}" if den == 1 else f"{num}/{den}"


def dot(u: Sequence, v: Sequence) -> Rational:
    assert len(u) == len(v)
    s = ZERO
    for a, b in zip(u, v):
        s += a * b
    return s


def norm_sq(u: Sequence) -> Rational:
    return dot(u, u)


class RatMatrix:
    """Immutable dense matrix of Rationals; rows are the vectors."""

    __slots__ = ("data", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(rat(x) for x in row) for row in rows)
        if not data:
            raise ValueError("matrix needs at least one row")
        width = len(data[0])
        if width == 0 or any(len(r) != width for r in data):
            raise ValueError("rows must be non-empty and of equal length")
        self.data = data
        self.nrows = len(data)
        self.ncols = width

    def __getitem__(self, i: int) -> tuple:
        return self.data[i]

    def __iter__(self):
        return iter(self.data)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        body = "; ".join(" ".join(rat_str(x) for x in row) for row in self.data)
        return f"RatMatrix({self.nrows}x{self.ncols}: {body})"

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.data))

    def matmul(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        cols = other.transpose().data
        return RatMatrix([[dot(r, c) for c in cols] for r in self.data])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        return self.matmul(other)

    def scaled(self, c) -> "RatMatrix":
        c = rat(c)
        return RatMatrix([[x * c for x in row] for row in self.data])

    def gram(self) -> "RatMatrix":
        """B·Bᵀ of this row matrix (the Gram matrix of the rows)."""
        rows = self.data
        n = self.nrows
        out = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                s = dot(rows[i], rows[j])
                out[i][j] = s
                out[j][i] = s
        return RatMatrix(out)

    def denominator_lcm(self) -> int:
        l = 1
        for row in self.data:
            for x in row:
                d = int(x.denominator)
                l = l * d // math.gcd(l, d)
        return l

    def to_int_rows(self) -> tuple[list[list[int]], int]:
        """Return (q·B as integer rows, q) for q = lcm of all denominators."""
        q = self.denominator_lcm()
        rows = [[int(x * q) for x in row] for row in self.data]
        return rows, q


class GsoData(NamedTuple):
    """Exact Gram-Schmidt data for a row basis.

    mu[j] holds (mu_{0,j}, ..., mu_{j-1,j}): the coefficient of the i-th
    orthogonalized vector in b_j.  gs_rows are the orthogonalized vectors
    themselves (handy for rescaling; derived, not independent state).
    """

    gs_norms_sq: tuple
    mu: tuple
    gs_rows: tuple


def gso(B: RatMatrix) -> GsoData:
    rows = [list(r) for r in B.data]
    n = B.nrows
    gs: list[list] = []
    norms: list = []
    mus: list[tuple] = []
    for j in range(n):
        v = rows[j]
        mu_j = []
        for i in range(j):
            m = dot(gs[i], rows[j]) / norms[i]
            mu_j.append(m)
            v = [a - m * b for a, b in zip(v, gs[i])]
        nsq = norm_sq(v)
        if nsq == 0:
            raise DegenerateBasis(f"row {j} is linearly dependent on rows 0..{j - 1}")
        gs.append(v)
        norms.append(nsq)
        mus.append(tuple(mu_j))
    return GsoData(tuple(norms), tuple(mus), tuple(tuple(r) for r in gs))


def gram_det_sq(B: RatMatrix) -> Rational:
    """det(B·Bᵀ) for a row basis = det(lattice)²; exact."""
    G = [list(r) for r in B.gram().data]
    n = B.nrows
    det = ONE
    for i in range(n):
        piv = G[i][i]
        if piv == 0:
            # The Gram matrix is PSD, so a zero leading minor means singular.
            raise DegenerateBasis("rows are linearly dependent (zero Gram pivot)")
        det *= piv
        for r in range(i + 1, n):
            f = G[r][i] / piv
            if f == 0:
                continue
            Gr, Gi = G[r], G[i]
            for c in range(i, n):
                Gr[c] -= f * Gi[c]
    if det <= 0:
        raise DegenerateBasis("rows are linearly dependent (nonpositive Gram determinant)")
    return det


def inverse(M: RatMatrix) -> RatMatrix:
    if M.nrows != M.ncols:
        raise SingularMatrix(f"only square matrices have inverses, got {M.nrows}x{M.ncols}")
    n = M.nrows
    A = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(M.data)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        pval = A[col][col]
        A[col] = [x / pval for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return RatMatrix([row[n:] for row in A])


def int_bits(x: int) -> int:
    """Bits to write x in binary with a sign bit: ceil(log2(|x|+1)) + 1."""
    return abs(int(x)).bit_length() + 1


def bitlength(B: RatMatrix) -> int:
    """Total encoding size: sum of int_bits over all numerators and denominators."""
    total = 0
    for row in B.data:
        for x in row:
            total += int_bits(x.numerator) + int_bits(x.denominator)
    return total
