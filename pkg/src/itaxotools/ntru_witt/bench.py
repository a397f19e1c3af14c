from __future__ import annotations

import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from time import perf_counter
from typing import Iterable

from tqdm import tqdm

from .anf import Assignment
from .attack import generate_system, system_stats
from .config import Settings
from .groebner import buchberger, solutions_from_basis
from .ring import NtruParams, keygen
from .solve import MAX_EXHAUSTIVE_VARS, solve_exhaustive
from .types import Backend, BitLevel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchRecord:
    N: int
    q: int
    seed: int
    bits: int
    n_eqs: int
    max_degree: int
    max_terms_b1: int
    max_terms_b2: int
    max_terms_b3: int
    gen_ms: int
    solve_ms: int
    n_solutions: int
    recovered: bool

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def row(self) -> list[str]:
        return [str(value).lower() if isinstance(value, bool) else str(value) for value in astuple(self)]


def _millis(start: float) -> int:
    return round((perf_counter() - start) * 1000)


def run_trial(N: int, q: int, seed: int, bits: int, settings: Settings, backend: Backend = Backend.Exhaustive) -> BenchRecord:
    terms = {level: 0 for level in BitLevel}
    n_eqs = max_degree = gen_ms = solve_ms = 0
    try:
        keys = keygen(NtruParams(N, q), seed)

        start = perf_counter()
        system = generate_system(keys, bits)
        gen_ms = _millis(start)
        n_eqs = len(system.equations)
        for level, figures in system_stats(system).items():
            terms[level] = figures.max_terms
            max_degree = max(max_degree, figures.max_degree)

        start = perf_counter()
        if backend is Backend.Exhaustive and N <= MAX_EXHAUSTIVE_VARS:
            solutions = solve_exhaustive(system, keys.public, block_bits=settings.block_bits)
        else:
            solutions = solutions_from_basis(buchberger(system, max_pairs=settings.max_pairs), max_pairs=settings.max_pairs)
        solve_ms = _millis(start)
    except Exception as exception:
        logger.error("Trial N=%d q=%d seed=%d bits=%d failed: %s", N, q, seed, bits, exception)
        return BenchRecord(N, q, seed, bits, n_eqs, max_degree, *terms.values(), gen_ms, solve_ms, -1, False)

    recovered = Assignment(keys.F) in solutions
    return BenchRecord(N, q, seed, bits, n_eqs, max_degree, *terms.values(), gen_ms, solve_ms, len(solutions), recovered)


def run_bench(
    n_list: Iterable[int],
    q: int,
    seed: int,
    trials: int,
    bits: int,
    settings: Settings,
    backend: Backend = Backend.Exhaustive,
) -> list[BenchRecord]:
    jobs = [(N, s) for N in n_list for s in range(seed, seed + trials)]
    with ThreadPoolExecutor(max_workers=settings.workers) as executor:
        results = executor.map(lambda job: run_trial(job[0], q, job[1], bits, settings, backend), jobs)
        return list(tqdm(results, total=len(jobs), disable=not settings.progress, desc="bench"))


def write_csv(records: Iterable[BenchRecord], path: Path):
    path = Path(path)
    fresh = not path.exists() or path.stat().st_size == 0
    with open(path, "a", encoding="utf-8", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        if fresh:
            writer.writerow(BenchRecord.header())
        for record in records:
            writer.writerow(record.row())
