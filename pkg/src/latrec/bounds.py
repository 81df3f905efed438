"""Hermite-constant bounds and sound comparison machinery.

Guarantee formulas mix rational determinants with irrational quantities like
delta_k^{1/(k-1)}.  Everything is checked on squared values whose fractional
exponents are cleared by cross-powering, so the final comparisons are between
exact integers/rationals.  A certified float fast path (directed-rounding
log2 bounds) answers the overwhelming majority of comparisons; only near-ties
fall through to the exact big-integer route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import Rational, rat

# ---------------------------------------------------------------------------
# directed-rounding logs
# ---------------------------------------------------------------------------

_REL = 2.0 ** -50
_ABS = 2.0 ** -50


def round_up(x: float) -> float:
    """A float strictly above x by a hair more than accumulated rounding error."""
    return x + (abs(x) * _REL + _ABS)


def round_down(x: float) -> float:
    return x - (abs(x) * _REL + _ABS)


def log2_int_hi(p: int) -> float:
    """Certified upper bound on log2(p) for a positive integer."""
    p = int(p)
    if p <= 0:
        raise ValueError("log2 of nonpositive integer")
    bl = p.bit_length()
    if bl <= 53:
        return round_up(math.log2(p))
    s = bl - 53
    return round_up(math.log2((p >> s) + 1) + s)


def log2_int_lo(p: int) -> float:
    p = int(p)
    if p <= 0:
        raise ValueError("log2 of nonpositive integer")
    bl = p.bit_length()
    if bl <= 53:
        return round_down(math.log2(p))
    s = bl - 53
    return round_down(math.log2(p >> s) + s)


def log2_rational_hi(q) -> float:
    q = rat(q)
    if q <= 0:
        raise ValueError("log2 of nonpositive rational")
    return log2_int_hi(int(q.numerator)) - log2_int_lo(int(q.denominator))


def log2_rational_lo(q) -> float:
    q = rat(q)
    if q <= 0:
        raise ValueError("log2 of nonpositive rational")
    return log2_int_lo(int(q.numerator)) - log2_int_hi(int(q.denominator))


# ---------------------------------------------------------------------------
# power products: Π base_i^{exp_i} with rational bases and exponents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowTerm:
    base: Rational
    exp: Fraction

    def __post_init__(self):
        object.__setattr__(self, "base", rat(self.base))
        object.__setattr__(self, "exp", Fraction(self.exp))
        if self.base <= 0:
            raise ValueError("power-product bases must be positive")


def _sum_log2_bounds(terms: list[PowTerm]) -> tuple[float, float]:
    lo = 0.0
    hi = 0.0
    for t in terms:
        e = float(t.exp)
        bhi = log2_rational_hi(t.base)
        blo = log2_rational_lo(t.base)
        if e >= 0:
            lo += e * blo
            hi += e * bhi
        else:
            lo += e * bhi
            hi += e * blo
    # widen for the float multiply/accumulate round-off
    pad = 1e-9 * (1.0 + abs(lo) + abs(hi)) + len(terms) * 2.0 ** -40
    return lo - pad, hi + pad


def _exact_powprod_pair(terms: list[PowTerm], scale: int) -> Rational:
    """Π base^{exp*scale} exactly; scale must clear all exponent denominators."""
    acc = rat(1)
    for t in terms:
        e = t.exp * scale
        assert e.denominator == 1
        acc *= t.base ** int(e)
    return acc


def powprod_le(lhs: list[PowTerm], rhs: list[PowTerm]) -> bool:
    """Π lhs ≤ Π rhs, decided soundly (certified floats, exact fallback)."""
    lhs_lo, lhs_hi = _sum_log2_bounds(lhs)
    rhs_lo, rhs_hi = _sum_log2_bounds(rhs)
    if lhs_hi < rhs_lo:
        return True
    if lhs_lo > rhs_hi:
        return False
    scale = 1
    for t in lhs + rhs:
        scale = scale * t.exp.denominator // math.gcd(scale, t.exp.denominator)
    return _exact_powprod_pair(lhs, scale) <= _exact_powprod_pair(rhs, scale)


def powprod_log2_hi(terms: list[PowTerm]) -> float:
    return _sum_log2_bounds(terms)[1]


# ---------------------------------------------------------------------------
# Hermite constants
# ---------------------------------------------------------------------------

# delta_k^k for the known critical lattices, k = 1..8 (squared normalization:
# delta_k = sup over rank-k lattices of lambda_1^2 / det^{2/k}).
DELTA_POW_EXACT = {
    1: Fraction(1),
    2: Fraction(4, 3),
    3: Fraction(2),
    4: Fraction(4),
    5: Fraction(8),
    6: Fraction(64, 3),
    7: Fraction(64),
    8: Fraction(256),
}

# 38 significant digits of pi, as a certified rational bracket.
PI_LO = Fraction(31415926535897932384626433832795028841, 10 ** 37)
PI_HI = Fraction(31415926535897932384626433832795028842, 10 ** 37)


def blichfeldt_delta_pow(k: int) -> Fraction:
    """Rational upper bound on delta_k^k: (2/pi)^k * Gamma(2 + k/2)^2."""
    if k < 1:
        raise ValueError("rank must be >= 1")
    if k % 2 == 0:
        g = Fraction(math.factorial(k // 2 + 1))
        return Fraction(2) ** k * g * g / PI_LO ** k
    # odd k: Gamma(2 + k/2) = Gamma(j + 1/2) = (2j)! sqrt(pi) / (4^j j!), j = (k+3)/2
    j = (k + 3) // 2
    g = Fraction(math.factorial(2 * j), 4 ** j * math.factorial(j))
    return Fraction(2) ** k * g * g / PI_LO ** (k - 1)


@lru_cache(maxsize=None)
def delta_pow_upper(k: int) -> Rational:
    """Sound rational upper bound on delta_k^k (exact for k ≤ 8)."""
    if k in DELTA_POW_EXACT:
        f = DELTA_POW_EXACT[k]
    else:
        f = blichfeldt_delta_pow(k)
    return rat(f.numerator, f.denominator)


@dataclass(frozen=True)
class HermiteBound:
    k: int
    log2_delta_k: float  # upper bound on log2(delta_k)
    source: str  # "exact-table" | "blichfeldt"

    def delta_upper(self) -> float:
        return 2.0 ** self.log2_delta_k


@lru_cache(maxsize=None)
def hermite_bound(k: int) -> HermiteBound:
    if k < 1:
        raise ValueError("rank must be >= 1")
    source = "exact-table" if k <= 8 else "blichfeldt"
    log2 = round_up(log2_rational_hi(delta_pow_upper(k)) / k)
    return HermiteBound(k=k, log2_delta_k=log2, source=source)


def delta_pow_term(k: int, exp_num: int, exp_den: int) -> PowTerm:
    """delta_k^{exp_num/exp_den} as a PowTerm over the rational delta_k^k bound."""
    return PowTerm(delta_pow_upper(k), Fraction(exp_num, exp_den * k))
