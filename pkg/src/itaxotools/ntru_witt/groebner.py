"""Buchberger's algorithm in the Boolean ring F_2[x]/(x_i^2 + x_i).

Monomials are Python int masks and polynomials sets of them. Variables are
idempotent, so the field equations never appear explicitly; their S-pairs
with a basis element g reduce to x * g for the variables x of the leading
monomial of g, and those "field pairs" are queued next to the ordinary ones.
Variables are ordered x0 > x1 > ... in both monomial orders.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from itertools import count
from typing import Callable, Iterable, Sequence

from .anf import AnfPoly, Assignment, monomial_variables
from .attack import EquationSystem
from .solve import SolutionSet
from .types import MonomialOrder

logger = logging.getLogger(__name__)

DEFAULT_MAX_PAIRS = 200_000


@dataclass
class GroebnerStats:
    pairs: int = 0
    zero_reductions: int = 0
    degree_trace: list[int] = field(default_factory=list)

    @property
    def max_degree(self) -> int:
        return max(self.degree_trace, default=0)


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[AnfPoly, ...]
    order: MonomialOrder
    n_vars: int
    stats: GroebnerStats = field(default_factory=GroebnerStats, compare=False)

    def is_unit(self) -> bool:
        return any(g.is_one() for g in self.generators)


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, partial: GroebnerBasis):
        super().__init__(message)
        self.partial = partial


def rank_function(order: MonomialOrder, n_vars: int) -> Callable[[int], int]:
    full = (1 << n_vars) - 1
    if order is MonomialOrder.Degrevlex:
        # equal degrees: the monomial missing the last differing variable is larger
        return lambda m: (m.bit_count() << n_vars) | (full & ~m)
    # lex: the first differing variable decides, so reverse the bits
    return lambda m: int(format(m, f"0{n_vars}b")[::-1], 2) if n_vars else 0


class _Element:
    __slots__ = ("terms", "lm")

    def __init__(self, terms: frozenset[int], rank: Callable[[int], int]):
        self.terms = terms
        self.lm = max(terms, key=rank)


def _times(monomial: int, terms: Iterable[int]) -> set[int]:
    result: set[int] = set()
    for m in terms:
        n = monomial | m
        if n in result:
            result.remove(n)
        else:
            result.add(n)
    return result


class Reducer:
    def __init__(self, order: MonomialOrder, n_vars: int):
        self.order = order
        self.n_vars = n_vars
        self.rank = rank_function(order, n_vars)

    def element(self, terms: Iterable[int]) -> _Element:
        return _Element(frozenset(terms), self.rank)

    def normal_form(self, terms: Iterable[int], basis: Sequence[_Element]) -> set[int]:
        """Full reduction; the cofactor of each step is disjoint from the divisor's leading monomial."""
        rank = self.rank
        current = set(terms)
        heap = [(-rank(m), m) for m in current]
        heapq.heapify(heap)
        remainder: set[int] = set()
        while heap:
            _, t = heapq.heappop(heap)
            if t not in current:
                continue
            for g in basis:
                if g.lm & t == g.lm:
                    cofactor = t & ~g.lm
                    for m in g.terms:
                        n = cofactor | m
                        if n in current:
                            current.remove(n)
                        else:
                            current.add(n)
                            heapq.heappush(heap, (-rank(n), n))
                    break
            else:
                current.remove(t)
                remainder.add(t)
        return remainder


def _interreduce(reducer: Reducer, basis: list[_Element]) -> list[_Element]:
    minimal: list[_Element] = []
    for g in sorted(basis, key=lambda e: reducer.rank(e.lm)):
        if not any(h.lm & g.lm == h.lm for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        tail = reducer.normal_form(g.terms - {g.lm}, others)
        reduced.append(reducer.element(tail | {g.lm}))
    return reduced


def _to_anf(element: _Element) -> AnfPoly:
    return AnfPoly.from_monomials(element.terms)


def groebner_basis(
    polys: Iterable[AnfPoly],
    n_vars: int,
    order: MonomialOrder = MonomialOrder.Degrevlex,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> GroebnerBasis:
    reducer = Reducer(order, n_vars)
    stats = GroebnerStats()
    basis: list[_Element] = []
    pairs: list[tuple[int, int, int, int]] = []
    ticket = count()

    def finish(elements: list[_Element]) -> GroebnerBasis:
        ordered = sorted(elements, key=lambda e: reducer.rank(e.lm))
        return GroebnerBasis(tuple(_to_anf(e) for e in ordered), order, n_vars, stats)

    def add(terms: set[int]) -> bool:
        new = reducer.element(terms)
        index = len(basis)
        basis.append(new)
        if new.lm == 0:
            return True
        for j, g in enumerate(basis[:-1]):
            if g.lm & new.lm:
                lcm = g.lm | new.lm
                heapq.heappush(pairs, (lcm.bit_count(), next(ticket), j, index))
        for var in monomial_variables(new.lm):
            heapq.heappush(pairs, (new.lm.bit_count(), next(ticket), index, -1 - var))
        return False

    for poly in polys:
        remainder = reducer.normal_form(poly, basis)
        if remainder and add(remainder):
            return finish([reducer.element({0})])

    while pairs:
        degree, _, i, j = heapq.heappop(pairs)
        stats.pairs += 1
        stats.degree_trace.append(degree)
        if stats.pairs > max_pairs:
            raise BudgetExceeded(f"pair budget of {max_pairs} exhausted with {len(pairs)} pairs pending", finish(_interreduce(reducer, basis)))

        f = basis[i]
        if j < 0:
            s = _times(1 << (-1 - j), f.terms)
        else:
            g = basis[j]
            lcm = f.lm | g.lm
            s = _times(lcm & ~f.lm, f.terms) ^ _times(lcm & ~g.lm, g.terms)
        remainder = reducer.normal_form(s, basis)
        if not remainder:
            stats.zero_reductions += 1
            continue
        if add(remainder):
            logger.debug("Unit ideal reached after %d pairs", stats.pairs)
            return finish([reducer.element({0})])

    result = finish(_interreduce(reducer, basis))
    logger.debug(
        "Basis of %d generators after %d pairs (%d zero reductions, max pair degree %d)",
        len(result.generators),
        stats.pairs,
        stats.zero_reductions,
        stats.max_degree,
    )
    return result


def buchberger(
    system: EquationSystem,
    order: MonomialOrder = MonomialOrder.Degrevlex,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> GroebnerBasis:
    return groebner_basis(system.polynomials(), system.n_vars, order, max_pairs)


def normal_form(poly: AnfPoly, gb: GroebnerBasis) -> AnfPoly:
    reducer = Reducer(gb.order, gb.n_vars)
    basis = [reducer.element(g) for g in gb.generators]
    return AnfPoly.from_monomials(reducer.normal_form(poly, basis))


def solutions_from_basis(gb: GroebnerBasis, limit: int | None = None, max_pairs: int = DEFAULT_MAX_PAIRS) -> SolutionSet:
    """All common zeros, splitting on the lowest unassigned variable and recomputing the basis below each split."""
    n_vars = gb.n_vars
    found: list[int] = []

    def full() -> bool:
        return limit is not None and len(found) > limit

    def split(basis: GroebnerBasis, fixed: int, prefix: int):
        if full() or basis.is_unit():
            return
        free = next((v for v in range(n_vars) if not fixed >> v & 1), None)
        if free is None:
            found.append(prefix)
            return
        if not basis.generators:
            for bits in range(1 << (n_vars - fixed.bit_count())):
                if full():
                    return
                mask, shift = prefix, 0
                for v in range(n_vars):
                    if not fixed >> v & 1:
                        mask |= ((bits >> shift) & 1) << v
                        shift += 1
                found.append(mask)
            return
        for bit in (0, 1):
            polys = [p.substitute(free, bit) for p in basis.generators]
            below = groebner_basis([p for p in polys if p], n_vars, basis.order, max_pairs)
            split(below, fixed | 1 << free, prefix | bit << free)

    split(gb, 0, 0)
    exhaustive = limit is None or len(found) <= limit
    masks = sorted(found)[: limit if limit is not None else None]
    return SolutionSet(tuple(Assignment.from_mask(m, n_vars) for m in masks), exhaustive, len(found) if exhaustive else None)
