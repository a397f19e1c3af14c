from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from time import perf_counter
from typing import Sequence

import numpy as np
from tqdm import tqdm

from .anf import Assignment
from .attack import WITT_MODULUS, EquationSystem, bit_conditions
from .ring import PublicKey, circulant
from .types import BitLevel

logger = logging.getLogger(__name__)

MAX_EXHAUSTIVE_VARS = 28

# Candidate-monomial pairs evaluated at once on the ANF path
EVAL_CHUNK = 1 << 22


class SearchBudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class SolutionSet:
    solutions: tuple[Assignment, ...]
    exhaustive: bool = True
    total: int | None = None
    """Number of solutions found, which may exceed the listing; None when unknown."""

    def __len__(self) -> int:
        return len(self.solutions)

    def __contains__(self, assignment: Assignment) -> bool:
        return assignment in self.solutions

    @property
    def has_solutions(self) -> bool:
        return bool(self.solutions) or not self.exhaustive

    def as_set(self) -> set[Assignment]:
        return set(self.solutions)


def _collect(masks: Sequence[int], n_vars: int, limit: int | None) -> SolutionSet:
    masks = sorted(masks)
    total = len(masks)
    exhaustive = limit is None or total <= limit
    if not exhaustive:
        masks = masks[:limit]
    return SolutionSet(tuple(Assignment.from_mask(m, n_vars) for m in masks), exhaustive, total)


def _bit_matrix(start: int, count: int, n_vars: int) -> np.ndarray:
    candidates = np.arange(start, start + count, dtype=np.int64)
    return ((candidates[:, None] >> np.arange(n_vars)) & 1).astype(np.float32)


class NumericSearch:
    def __init__(self, key: PublicKey, levels: Sequence[BitLevel]):
        h = key.h.reduce(WITT_MODULUS)
        C = circulant(h).T
        self.n_vars = key.params.N
        self.levels = list(levels)
        self.offset = C[0].astype(np.float32)
        # f = 1 + 2F + XF, so row j of the map is 2 C[j] + C[j + 1]
        self.map = (2 * C + np.roll(C, -1, axis=0)).astype(np.float32)

    def block(self, start: int, count: int) -> np.ndarray:
        F = _bit_matrix(start, count, self.n_vars)
        c = (F @ self.map + self.offset).astype(np.int64) % WITT_MODULUS
        ok = np.ones(count, dtype=bool)
        for level in self.levels:
            ok &= ~bit_conditions(c, level).any(axis=1)
        return start + np.flatnonzero(ok)


class AnfSearch:
    def __init__(self, system: EquationSystem):
        self.polys = [p.monomials.astype(np.int64) for p in system.polynomials()]

    def block(self, start: int, count: int) -> np.ndarray:
        candidates = np.arange(start, start + count, dtype=np.int64)
        for monomials in self.polys:
            if candidates.size == 0:
                break
            if monomials.size == 0:
                continue
            rows = max(1, EVAL_CHUNK // monomials.size)
            parity = np.empty(candidates.size, dtype=bool)
            for first in range(0, candidates.size, rows):
                chunk = candidates[first : first + rows, None]
                hits = (chunk & monomials[None, :]) == monomials[None, :]
                parity[first : first + rows] = np.count_nonzero(hits, axis=1) & 1 == 1
            candidates = candidates[~parity]
        return candidates


def solve_exhaustive(
    system: EquationSystem,
    key: PublicKey | None = None,
    *,
    workers: int = 1,
    block_bits: int = 16,
    limit: int | None = None,
    progress: bool = False,
) -> SolutionSet:
    n_vars = system.n_vars
    if n_vars > MAX_EXHAUSTIVE_VARS:
        raise SearchBudgetExceeded(f"{n_vars} unknowns exceed the exhaustive budget of {MAX_EXHAUSTIVE_VARS}; use the Gröbner backend or export the system")

    if key is not None:
        if key.params.N != n_vars:
            raise ValueError(f"key has N={key.params.N} but the system has {n_vars} unknowns")
        search = NumericSearch(key, system.levels)
    else:
        search = AnfSearch(system)

    total = 1 << n_vars
    size = min(total, 1 << block_bits)
    starts = range(0, total, size)

    start = perf_counter()
    with ThreadPoolExecutor(max_workers=workers) as executor:
        blocks = executor.map(lambda s: search.block(s, min(size, total - s)), starts)
        found = [int(m) for block in tqdm(blocks, total=len(starts), disable=not progress, desc="search") for m in block]
    logger.info(
        "Searched 2^%d candidates with the %s path in %.2fs, %d solutions",
        n_vars,
        "numeric" if key is not None else "ANF",
        perf_counter() - start,
        len(found),
    )
    return _collect(found, n_vars, limit)
