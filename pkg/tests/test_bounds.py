"""Certified float brackets, Hermite-constant table, power-product compares."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latrec.bounds import (
    DELTA_POW_EXACT,
    PI_HI,
    PI_LO,
    PowTerm,
    blichfeldt_delta_pow,
    delta_pow_term,
    delta_pow_upper,
    hermite_bound,
    log2_int_hi,
    log2_int_lo,
    log2_rational_hi,
    log2_rational_lo,
    powprod_le,
    powprod_log2_hi,
    round_down,
    round_up,
)
from latrec.exactnum import rat

# reference decimals, derived independently with mpmath (tools/derive_examples.py)
DELTA_REF = {
    2: "1.15470053837925149696891945461",
    3: "1.25992104989487316476721060728",
    4: "1.41421356237309504880168872421",
    5: "1.51571656651039808234725980131",
    6: "1.66536635531120862380983879083",
    7: "1.81144732852781334318834574643",
    8: "2.0",
}
DELTA10_UPPER = "2.37326711910379740652315299265"
DELTA9_UPPER = "2.24064645255761008687657166411"


# --- rounding brackets --------------------------------------------------------


def test_round_up_down_bracket_tightly():
    for x in (0.0, 1.0, -1.0, 0.1, 1e300, -2.5e-7):
        assert round_down(x) < x < round_up(x)
        # pad is relative 2^-50 plus absolute 2^-50: tiny but nonzero
        assert round_up(x) - x <= abs(x) * 2.0 ** -49 + 2.0 ** -49


def test_log2_int_brackets():
    for p in (1, 2, 3, 7, 8, 1000, 2**70 + 1):
        lo, hi = log2_int_lo(p), log2_int_hi(p)
        assert lo <= math.log2(p) <= hi
        assert hi - lo < 1e-9
    assert log2_int_hi(8) >= 3.0 >= log2_int_lo(8)


def test_log2_rational_brackets():
    q = rat(4, 3)
    lo, hi = log2_rational_lo(q), log2_rational_hi(q)
    ref = math.log2(4 / 3)
    assert lo <= ref <= hi and hi - lo < 1e-9
    # negative logs for q < 1
    assert log2_rational_hi(rat(1, 3)) < 0


# --- pi bracket and Blichfeldt ------------------------------------------------


def test_pi_bracket():
    assert PI_LO < PI_HI
    assert float(PI_LO) <= math.pi <= float(PI_HI)
    assert float(PI_HI) - float(PI_LO) < 1e-30


def test_delta_pow_exact_table():
    assert DELTA_POW_EXACT == {
        1: rat(1),
        2: rat(4, 3),
        3: rat(2),
        4: rat(4),
        5: rat(8),
        6: rat(64, 3),
        7: rat(64),
        8: rat(256),
    }


@pytest.mark.parametrize("k,ref", sorted(DELTA_REF.items()))
def test_table_matches_reference_decimals(k, ref):
    # delta_k = (delta_k^k)^(1/k); the table entries are exact values
    val = float(DELTA_POW_EXACT[k]) ** (1.0 / k)
    assert abs(val - float(ref)) < 1e-12


def test_blichfeldt_upper_bounds():
    # k = 10: bound 2.37326711910379740652...; k = 9 similar; both must be
    # genuine upper bounds for the exact small-rank values they extend
    b10 = float(blichfeldt_delta_pow(10)) ** 0.1
    assert abs(b10 - float(DELTA10_UPPER)) < 1e-12
    b9 = float(blichfeldt_delta_pow(9)) ** (1.0 / 9.0)
    assert abs(b9 - float(DELTA9_UPPER)) < 1e-10
    for k in range(2, 9):
        assert blichfeldt_delta_pow(k) >= Fraction(DELTA_POW_EXACT[k].numerator,
                                                   DELTA_POW_EXACT[k].denominator)


def test_delta_pow_upper_dispatch():
    for k in range(1, 9):
        assert delta_pow_upper(k) == DELTA_POW_EXACT[k]
    assert delta_pow_upper(10) == rat(blichfeldt_delta_pow(10))
    assert delta_pow_upper(10) == delta_pow_upper(10)  # cached, stable


def test_hermite_bound_sources_and_values():
    h2 = hermite_bound(2)
    assert h2.source == "exact-table"
    assert h2.k == 2
    assert abs(h2.delta_upper() - float(DELTA_REF[2])) < 1e-9
    assert h2.delta_upper() >= float(DELTA_REF[2])  # rounded up, never below
    h10 = hermite_bound(10)
    assert h10.source == "blichfeldt"
    assert abs(h10.delta_upper() - float(DELTA10_UPPER)) < 1e-9
    with pytest.raises(ValueError):
        hermite_bound(0)


# --- power products -------------------------------------------------------------


def frac_powprod_le(lhs, rhs):
    """Independent exact compare: clear all exponent denominators, then pow."""
    scale = 1
    for t in lhs + rhs:
        scale = scale * t.exp.denominator // math.gcd(scale, t.exp.denominator)

    def side(terms):
        acc = Fraction(1)
        for t in terms:
            e = t.exp * scale
            acc *= Fraction(int(t.base.numerator), int(t.base.denominator)) ** int(e)
        return acc

    return side(lhs) <= side(rhs)


def test_powterm_validation():
    with pytest.raises(ValueError):
        PowTerm(rat(0), Fraction(1))
    with pytest.raises(ValueError):
        PowTerm(rat(-2), Fraction(1, 2))
    t = PowTerm(rat(4, 3), Fraction(3, 2))
    assert t.base == rat(4, 3) and t.exp == Fraction(3, 2)


rational = st.fractions(min_value=Fraction(1, 8), max_value=40, max_denominator=8)
exponent = st.fractions(min_value=-4, max_value=4, max_denominator=6)


@given(
    st.lists(st.tuples(rational, exponent), min_size=1, max_size=3),
    st.lists(st.tuples(rational, exponent), min_size=1, max_size=3),
)
def test_powprod_le_matches_fraction_twin(lterms, rterms):
    lhs = [PowTerm(rat(b.numerator, b.denominator), e) for b, e in lterms]
    rhs = [PowTerm(rat(b.numerator, b.denominator), e) for b, e in rterms]
    assert powprod_le(lhs, rhs) == frac_powprod_le(lhs, rhs)


def test_powprod_le_exact_boundary():
    # equal products on both sides in different shapes: <= must hold both ways
    lhs = [PowTerm(rat(4), Fraction(1, 2))]
    rhs = [PowTerm(rat(2), Fraction(1))]
    assert powprod_le(lhs, rhs)
    assert powprod_le(rhs, lhs)
    # and a hair apart
    assert not powprod_le([PowTerm(rat(2000001, 1000000), Fraction(1))], rhs)


def test_powprod_log2_hi_is_upper():
    terms = [PowTerm(rat(4, 3), Fraction(5, 2)), PowTerm(rat(7), Fraction(-1, 3))]
    exact = 2.5 * math.log2(4 / 3) - math.log2(7) / 3
    assert powprod_log2_hi(terms) >= exact - 1e-12


def test_delta_pow_term_semantics():
    # delta_k^{a/b} encoded over the delta_k^k rational: exponent a/(b*k)
    t = delta_pow_term(4, 3, 2)
    assert t.base == delta_pow_upper(4)
    assert t.exp == Fraction(3, 8)
