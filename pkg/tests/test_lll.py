"""LLL wrapper: exact conditions, classical bounds, the dense-block oracle."""

import random
from fractions import Fraction

import pytest

from helpers import check_lll_conditions, frac_rows, rand_lattice
from latrec.errors import InvalidRank, InvariantViolation
from latrec.exactnum import RatMatrix, gram_det_sq, norm_sq, rat
from latrec.lattice import Lattice, Sublattice, density_ratio
from latrec.lll import assert_lll_conditions, lll_dsp_oracle, lll_reduce


def L_of(rows):
    return Lattice(RatMatrix([[rat(x) for x in row] for row in rows]))


def test_reduce_output_structure():
    rng = random.Random(60)
    for _ in range(25):
        n = rng.randint(1, 6)
        L = rand_lattice(rng, n, span=15)
        red = lll_reduce(L)
        # transform is integer unimodular and actually maps basis to basis
        assert gram_det_sq(red.transform) == 1
        assert (red.transform @ L.basis).data == red.basis.data
        assert Lattice(red.basis).same_lattice(L)
        # exact reduction conditions, re-derived independently
        assert check_lll_conditions(frac_rows(red.basis))
        # package's own checker agrees
        assert_lll_conditions(red.gso, "test")


def test_reduce_handles_rational_entries():
    L = Lattice(RatMatrix([[rat(7, 3), rat(1, 2)], [rat(1, 5), rat(2)]]))
    red = lll_reduce(L)
    assert Lattice(red.basis).same_lattice(L)
    assert check_lll_conditions(frac_rows(red.basis))


def test_classical_size_bounds():
    rng = random.Random(61)
    for _ in range(25):
        n = rng.randint(2, 6)
        L = rand_lattice(rng, n, span=9)
        red = lll_reduce(L)
        det_sq = L.det_sq()
        # orthogonality defect: prod ||b_i||^2 <= 2^(n(n-1)/2) det^2
        prod = rat(1)
        for row in red.basis:
            prod *= norm_sq(row)
        assert prod <= rat(2) ** (n * (n - 1) // 2) * det_sq
        # first vector: ||b_1||^(2n) <= 2^(n(n-1)) det^2  [squared form of
        # ||b_1|| <= 2^((n-1)/4) det^(1/n), both sides to the 2n]
        assert norm_sq(red.basis[0]) ** n <= rat(2) ** (n * (n - 1)) * det_sq ** 2


def test_reduction_is_a_fixed_point():
    rng = random.Random(62)
    for _ in range(10):
        L = rand_lattice(rng, rng.randint(2, 5), span=20)
        once = lll_reduce(L)
        twice = lll_reduce(Lattice(once.basis))
        assert twice.basis.data == once.basis.data


def test_unimodular_lattice_reduces_to_unit_vector():
    # det [[4,1],[9,2]] = -1: the lattice is all of Z^2, so lambda_1^2 = 1
    red = lll_reduce(L_of([[4, 1], [9, 2]]))
    assert norm_sq(red.basis[0]) == 1


def test_sign_normalization_is_deterministic():
    red = lll_reduce(L_of([[0, -3], [-2, 0]]))
    for row in red.basis:
        lead = next(x for x in row if x != 0)
        assert lead > 0


def test_assert_lll_conditions_rejects_bad_gso():
    from latrec.exactnum import gso

    bad = RatMatrix([[rat(1), rat(0)], [rat(10), rat(1)]])  # mu = 10
    with pytest.raises(InvariantViolation):
        assert_lll_conditions(gso(bad), "test")


# --- the rank-ell dense-block oracle ------------------------------------------


def test_dsp_oracle_bounds_hold():
    rng = random.Random(63)
    for _ in range(20):
        n = rng.randint(2, 6)
        L = rand_lattice(rng, n, span=9)
        ell = rng.randint(1, n - 1)
        sub = lll_dsp_oracle(L, ell)
        assert sub.rank == ell
        assert sub.parent is L
        r = density_ratio(sub)
        # the module enforces both guarantees internally; re-check the sharper
        # one here: gamma^(2 * 2n) <= (4/3)^(ell(n-ell)n) * ... cross-powered
        lhs = sub.det_sq() ** (2 * n)
        rhs = rat(4, 3) ** (ell * (n - ell) * n) * L.det_sq() ** (2 * ell)
        assert lhs <= rhs
        assert r.le_sq(rat(2) ** (2 * ell * (n - ell)))


def test_dsp_oracle_requires_full_delta():
    # [[10,0],[5,8]] is 3/4-reduced as-is and violates the (4/3)^(1/4) bound
    # (gamma^2 = 100/80 = 1.25 > sqrt(4/3)); only the delta=1 pass inside the
    # oracle brings gamma^2 down to 89/80
    L = L_of([[10, 0], [5, 8]])
    sub = lll_dsp_oracle(L, 1)
    v = sub.basis_matrix()[0]
    assert norm_sq(v) == 89
    assert sub.det_sq() ** 4 <= rat(4, 3) ** 2 * L.det_sq() ** 2


def test_dsp_oracle_validates_ell():
    L = L_of([[1, 0], [0, 1]])
    with pytest.raises(InvalidRank):
        lll_dsp_oracle(L, 0)
    with pytest.raises(InvalidRank):
        lll_dsp_oracle(L, 3)
    # ell = n is legal: the whole lattice, density ratio exactly gamma^2 = 1
    assert lll_dsp_oracle(L, 2).rank == 2
