"""Exact SVP enumeration against an unpruned from-scratch search."""

import random
from fractions import Fraction

import pytest

from helpers import brute_force_svp, rand_lattice
from latrec.errors import InvalidParams, RankTooLarge
from latrec.exactnum import RatMatrix, norm_sq, rat
from latrec.lattice import Lattice, density_ratio, is_primitive
from latrec.oracle import (
    DEFAULT_MAX_ORACLE_RANK,
    SvpResult,
    hsvp_oracle,
    max_oracle_rank,
    svp_exact,
)


def L_of(rows):
    return Lattice(RatMatrix([[rat(x) for x in row] for row in rows]))


def test_frozen_example():
    # minima of [[2,0],[1,2]]: +-(2,0) with squared norm 4 (derived externally)
    res = svp_exact(L_of([[2, 0], [1, 2]]))
    assert isinstance(res, SvpResult)
    assert res.norm_sq == 4
    # canonical representative: first nonzero coordinate positive, then min
    assert res.vector == (1, 0)  # coefficients: 1*b1 + 0*b2 = (2,0)


def test_vector_is_coefficients_of_input_basis():
    L = L_of([[3, 1], [1, 3]])
    res = svp_exact(L)
    v = [
        sum(res.vector[i] * L.basis[i][j] for i in range(2))
        for j in range(2)
    ]
    assert norm_sq(v) == res.norm_sq


def test_agrees_with_unpruned_search():
    rng = random.Random(404)
    done = 0
    while done < 60:
        n = rng.randint(1, 4)
        L = rand_lattice(rng, n, span=5)
        ref = brute_force_svp(L)
        if ref is None:
            continue  # enumeration box too large for the unpruned twin
        assert svp_exact(L).norm_sq == ref
        done += 1


def test_agrees_on_rational_entries():
    rng = random.Random(405)
    done = 0
    while done < 10:
        L = rand_lattice(rng, 3, span=5, denom=3)
        ref = brute_force_svp(L)
        if ref is None:
            continue
        assert svp_exact(L).norm_sq == ref
        done += 1


def test_determinism():
    L = L_of([[5, 3, 1], [2, -4, 0], [1, 1, 7]])
    a = svp_exact(L)
    b = svp_exact(L)
    assert a == b


def test_rank_cap():
    rng = random.Random(7)
    L = rand_lattice(rng, 4, span=3)
    with pytest.raises(RankTooLarge):
        svp_exact(L, max_rank=3)
    assert max_oracle_rank() == DEFAULT_MAX_ORACLE_RANK
    assert max_oracle_rank(5) == 5


def test_env_override(monkeypatch):
    monkeypatch.setenv("LATREC_MAX_ORACLE_RANK", "2")
    assert max_oracle_rank() == 2
    monkeypatch.setenv("LATREC_MAX_ORACLE_RANK", "junk")
    with pytest.raises(InvalidParams):
        max_oracle_rank()


def test_hsvp_oracle_wraps_svp():
    rng = random.Random(406)
    for _ in range(20):
        n = rng.randint(1, 4)
        L = rand_lattice(rng, n, span=6)
        sub = hsvp_oracle(L)
        assert sub.parent is L
        assert sub.rank == 1
        assert is_primitive(sub)
        assert sub.det_sq() == svp_exact(L).norm_sq


def test_hsvp_oracle_meets_hermite_bound():
    # lambda_1^2 <= delta_n det^(2/n), cross-powered to clear the root
    from latrec.bounds import delta_pow_upper

    rng = random.Random(407)
    for _ in range(40):
        n = rng.randint(2, 6)
        L = rand_lattice(rng, n, span=7)
        sub = hsvp_oracle(L)
        assert sub.det_sq() ** n <= delta_pow_upper(n) * L.det_sq()
