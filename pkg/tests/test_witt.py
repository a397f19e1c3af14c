from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from itaxotools.ntru_witt.anf import ANF, AnfPoly
from itaxotools.ntru_witt.types import Reading
from itaxotools.ntru_witt.witt import (
    BITS,
    WittVec,
    closed_form_sum,
    elementary_symmetric,
    from_residue,
    lift,
    to_residue,
    witt_add,
    witt_mul,
    witt_sum_fold,
)


@pytest.mark.parametrize(
    "residue, bits",
    [
        (0, (0, 0, 0, 0)),
        (1, (1, 0, 0, 0)),
        (13, (1, 0, 1, 1)),
    ],
)
def test_residue_conversion(residue, bits):
    assert from_residue(residue).components == bits
    assert to_residue(WittVec(*bits)) == residue


@pytest.mark.parametrize("residue", [-1, 16, 100])
def test_residue_out_of_range(residue):
    with pytest.raises(ValueError):
        from_residue(residue)


def test_to_residue_needs_bits():
    with pytest.raises(ValueError):
        to_residue(WittVec(2, 0, 0, 0))


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ((1, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0)),
        ((1, 1, 1, 1), (1, 0, 0, 0), (0, 0, 0, 0)),
        ((1, 0, 1, 1), (0, 0, 0, 0), (1, 0, 1, 1)),
    ],
)
def test_witt_add_examples(a, b, expected):
    assert witt_add(WittVec(*a), WittVec(*b)).components == expected


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ((1, 0, 1, 1), (1, 0, 0, 0), (1, 0, 1, 1)),
        ((1, 1, 0, 0), (1, 1, 0, 0), (1, 0, 0, 1)),
        ((0, 1, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)),
    ],
)
def test_witt_mul_examples(a, b, expected):
    assert witt_mul(WittVec(*a), WittVec(*b)).components == expected


def test_witt_isomorphism_all_pairs():
    for a, b in product(range(16), repeat=2):
        x, y = from_residue(a), from_residue(b)
        assert to_residue(witt_add(x, y)) == (a + b) % 16
        assert to_residue(witt_mul(x, y)) == (a * b) % 16
        assert witt_add(x, y) == witt_add(y, x)
        assert witt_mul(x, y) == witt_mul(y, x)


def test_witt_distributivity_all_triples():
    for a, b, c in product(range(16), repeat=3):
        x, y, z = from_residue(a), from_residue(b), from_residue(c)
        assert witt_mul(x, witt_add(y, z)) == witt_add(witt_mul(x, y), witt_mul(x, z))


def test_fold_empty_and_singleton():
    assert witt_sum_fold([]) == WittVec.zero()
    assert witt_sum_fold([from_residue(9)]) == from_residue(9)


@pytest.mark.parametrize("s", [1, 2, 5, 15, 16, 17, 33])
def test_fold_of_ones(s):
    assert witt_sum_fold([from_residue(1)] * s) == from_residue(s % 16)


def test_fold_exhaustive_small():
    for s in range(1, 5):
        for residues in product(range(16), repeat=s):
            assert to_residue(witt_sum_fold(from_residue(r) for r in residues)) == sum(residues) % 16


def test_fold_order_independent():
    rng = np.random.default_rng(5)
    for _ in range(200):
        residues = [int(r) for r in rng.integers(0, 16, int(rng.integers(2, 12)))]
        terms = [from_residue(r) for r in residues]
        shuffled = [terms[i] for i in rng.permutation(len(terms))]
        assert witt_sum_fold(terms) == witt_sum_fold(shuffled)


def test_elementary_symmetric():
    # four ones: e_t = C(4, t) mod 2
    assert elementary_symmetric([1, 1, 1, 1], 4) == [1, 0, 0, 0, 1]
    assert elementary_symmetric([1, 0, 1], 3) == [1, 0, 1, 0]


def test_closed_form_single_term():
    for r in range(16):
        assert closed_form_sum([from_residue(r)]) == from_residue(r)


def test_closed_form_empty():
    assert closed_form_sum([]) == WittVec.zero()


def test_closed_form_low_bits_exhaustive():
    """Components 0 and 1 depend on the bit 0 and bit 1 slices only."""
    for s in range(1, 7):
        for pattern in product(range(4), repeat=s):
            terms = [from_residue(r) for r in pattern]
            closed, fold = closed_form_sum(terms), witt_sum_fold(terms)
            assert closed.components[:2] == fold.components[:2]


def test_closed_form_random_lists():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        residues = [int(r) for r in rng.integers(0, 16, int(rng.integers(2, 11)))]
        terms = [from_residue(r) for r in residues]
        assert closed_form_sum(terms) == witt_sum_fold(terms) == from_residue(sum(residues) % 16)


@pytest.mark.parametrize("bits", [1, 2, 3])
def test_closed_form_truncated(bits):
    terms = [from_residue(r) for r in (3, 7, 9, 14, 5)]
    full = witt_sum_fold(terms)
    truncated = closed_form_sum(terms, bits=bits)
    assert truncated.components[:bits] == full.components[:bits]
    assert all(c == 0 for c in truncated.components[bits:])


def test_closed_form_bits_range():
    with pytest.raises(ValueError):
        closed_form_sum([from_residue(1)], bits=5)


def test_printed_reading_counterexample():
    # four twos make eight: only the amended reading of component 3 gets it
    terms = [from_residue(2)] * 4
    assert closed_form_sum(terms, reading=Reading.Amended) == from_residue(8)
    assert closed_form_sum(terms, reading=Reading.Printed) == from_residue(0)


def test_symbolic_concrete_coherence():
    rng = np.random.default_rng(9)
    x = [AnfPoly.variable(i) for i in range(8)]
    a = WittVec(x[0], x[1], x[2], x[3])
    b = WittVec(x[4], x[5], x[6], x[7])
    total = witt_add(a, b, ANF)
    prod = witt_mul(a, b, ANF)
    for mask in rng.integers(0, 256, 40):
        mask = int(mask)
        ra, rb = mask & 15, mask >> 4
        assert to_residue(total.map(lambda p: p.evaluate(mask))) == (ra + rb) % 16
        assert to_residue(prod.map(lambda p: p.evaluate(mask))) == (ra * rb) % 16


def test_lift():
    assert lift(from_residue(5), ANF) == WittVec(AnfPoly.one(), AnfPoly.zero(), AnfPoly.one(), AnfPoly.zero())
    assert lift(from_residue(5), BITS) == from_residue(5)
