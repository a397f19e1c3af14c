from __future__ import annotations

import pytest

from itaxotools.ntru_witt.anf import AnfPoly, Assignment
from itaxotools.ntru_witt.attack import generate_system
from itaxotools.ntru_witt.groebner import (
    BudgetExceeded,
    GroebnerBasis,
    buchberger,
    groebner_basis,
    normal_form,
    rank_function,
    solutions_from_basis,
)
from itaxotools.ntru_witt.ring import NtruParams, keygen
from itaxotools.ntru_witt.solve import solve_exhaustive
from itaxotools.ntru_witt.types import MonomialOrder

from .conftest import anf


def basis_of(*texts: str, n_vars: int = 2, order: MonomialOrder = MonomialOrder.Degrevlex) -> GroebnerBasis:
    return groebner_basis([anf(t) for t in texts], n_vars, order)


def test_rank_degrevlex():
    rank = rank_function(MonomialOrder.Degrevlex, 3)
    # x0 > x1 > x2, degree first
    assert rank(0b001) > rank(0b010) > rank(0b100) > rank(0)
    assert rank(0b110) > rank(0b001)
    assert rank(0b011) > rank(0b101) > rank(0b110)


def test_rank_lex():
    rank = rank_function(MonomialOrder.Lex, 3)
    assert rank(0b001) > rank(0b110) > rank(0b010) > rank(0b100) > rank(0)


@pytest.mark.parametrize("order", list(MonomialOrder))
def test_linear_basis(order):
    gb = basis_of("x0", "x0 + x1", order=order)
    assert set(gb.generators) == {anf("x0"), anf("x1")}


@pytest.mark.parametrize("order", list(MonomialOrder))
def test_product_forced_to_one(order):
    gb = basis_of("1 + x0*x1", order=order)
    assert set(gb.generators) == {anf("1 + x0"), anf("1 + x1")}


def test_unit_ideal():
    gb = basis_of("x0", "x0 + 1")
    assert gb.is_unit()
    assert gb.generators == (AnfPoly.one(),)


def test_ideal_membership(system7):
    gb = buchberger(system7)
    for poly in system7.polynomials():
        assert not normal_form(poly, gb)


def test_basis_vanishes_on_solutions(keys7, system7):
    gb = buchberger(system7)
    solutions = solve_exhaustive(system7, keys7.public)
    for g in gb.generators:
        assert all(g.evaluate(s.mask) == 0 for s in solutions.solutions)


def test_stats(system7):
    gb = buchberger(system7)
    assert gb.stats.pairs == len(gb.stats.degree_trace)
    assert gb.stats.max_degree == max(gb.stats.degree_trace, default=0)
    assert gb.stats.zero_reductions <= gb.stats.pairs


def test_budget_exceeded(system7):
    with pytest.raises(BudgetExceeded) as info:
        buchberger(system7, max_pairs=1)
    assert isinstance(info.value.partial, GroebnerBasis)
    assert info.value.partial.generators


def test_solutions_single():
    solutions = solutions_from_basis(basis_of("x0 + 1", "x1"))
    assert solutions.solutions == (Assignment((1, 0)),)


def test_solutions_unit():
    solutions = solutions_from_basis(basis_of("1"))
    assert len(solutions) == 0
    assert solutions.exhaustive


def test_solutions_free_variables():
    gb = groebner_basis([], 4)
    assert len(solutions_from_basis(gb)) == 16
    capped = solutions_from_basis(gb, limit=3)
    assert len(capped) == 3
    assert not capped.exhaustive
    assert capped.total is None


def test_solutions_partial_free():
    gb = groebner_basis([anf("x0*x1 + x1"), anf("x2 + 1")], 4)
    expected = {m for m in range(16) if (m >> 2) & 1 and not ((m >> 1) & 1 and not m & 1)}
    assert {s.mask for s in solutions_from_basis(gb).solutions} == expected


@pytest.mark.parametrize("order", list(MonomialOrder))
@pytest.mark.parametrize("seed", range(5))
def test_backends_agree_N7(seed, order):
    keys = keygen(NtruParams(7, 128), seed)
    for bits in (2, 3, 4):
        system = generate_system(keys, bits)
        gb = buchberger(system, order)
        assert solutions_from_basis(gb).as_set() == solve_exhaustive(system, keys.public).as_set()


@pytest.mark.slow
@pytest.mark.parametrize("N", [7, 11])
def test_backends_agree(N):
    params = NtruParams(N, 128)
    for seed in range(10):
        keys = keygen(params, seed)
        system = generate_system(keys, 4)
        assert solutions_from_basis(buchberger(system)).as_set() == solve_exhaustive(system, keys.public).as_set()
