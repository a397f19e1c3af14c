from __future__ import annotations

import logging
from argparse import Namespace
from pathlib import Path

from .anf import Assignment
from .attack import EquationSystem, InconsistentSolution, generate_system, recover_g, system_stats
from .bench import run_bench, write_csv
from .config import Settings
from .formats import FormatError, read_anf_system, read_key_file, write_anf_system, write_cnf, write_key_file
from .groebner import BudgetExceeded, buchberger, solutions_from_basis
from .ring import KeygenFailure, NtruKeySet, NtruParams, keygen
from .selftest import passed, run_selftest
from .solve import SearchBudgetExceeded, SolutionSet, solve_exhaustive
from .types import Backend, BitLevel, MonomialOrder, SumMethod

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _load_keys(path: Path) -> NtruKeySet | None:
    try:
        return read_key_file(path)
    except (OSError, FormatError) as exception:
        logger.error("Cannot read key file %s: %s", path, exception)
        return None


def _load_system(path: Path) -> EquationSystem | None:
    try:
        return read_anf_system(path)
    except (OSError, FormatError) as exception:
        logger.error("Cannot read system file %s: %s", path, exception)
        return None


def cmd_keygen(args: Namespace, settings: Settings) -> int:
    try:
        params = NtruParams(args.n, args.q)
        keys = keygen(params, args.seed)
    except (ValueError, KeygenFailure) as exception:
        logger.error(str(exception))
        return EXIT_USAGE
    write_key_file(keys, args.out)
    print(f"Wrote {args.out}: N={params.N} q={params.q} seed={keys.seed}")
    print(f"retries: {keys.redraws}")
    return EXIT_OK


def cmd_attack(args: Namespace, settings: Settings) -> int:
    keys = _load_keys(args.keys)
    if keys is None:
        return EXIT_USAGE
    method = SumMethod[args.method.capitalize()]
    system = generate_system(keys, args.bits, workers=settings.workers, method=method)
    write_anf_system(system, args.out)

    print(f"Wrote {args.out}: {len(system.equations)} equations in {system.n_vars} unknowns")
    for level, figures in system_stats(system).items():
        print(
            f"bit {int(level)}: {figures.count} equations, degree {figures.max_degree}, "
            f"max terms {figures.max_terms}, mean terms {figures.mean_terms:.1f}"
        )
        if level is BitLevel.Octic and figures.max_terms > settings.term_warning:
            logger.warning(
                "Bit 3 equations reach %d terms, beyond the %d where Gröbner engines are known to give up",
                figures.max_terms,
                settings.term_warning,
            )
    return EXIT_OK


def _matches_key(system: EquationSystem, keys: NtruKeySet) -> bool:
    if system.n_vars != keys.params.N:
        return False
    expected = generate_system(keys, 2).equations
    return tuple(system.by_level(BitLevel.Quadratic)) == expected


def _solve(system: EquationSystem, keys: NtruKeySet | None, args: Namespace, settings: Settings) -> SolutionSet:
    backend = Backend(args.backend)
    cap = settings.solution_cap
    if backend is Backend.Exhaustive:
        public = None
        if keys is not None:
            if _matches_key(system, keys):
                public = keys.public
            else:
                logger.warning("System does not come from the given key, evaluating equations directly")
        return solve_exhaustive(
            system,
            public,
            workers=settings.workers,
            block_bits=settings.block_bits,
            limit=cap,
            progress=settings.progress,
        )

    gb = buchberger(system, MonomialOrder(args.order), settings.max_pairs)
    print(f"basis: {len(gb.generators)} generators, {gb.stats.pairs} pairs, max pair degree {gb.stats.max_degree}")
    return solutions_from_basis(gb, limit=cap, max_pairs=settings.max_pairs)


def cmd_solve(args: Namespace, settings: Settings) -> int:
    system = _load_system(args.system)
    if system is None:
        return EXIT_USAGE
    keys = None
    if args.keys is not None:
        keys = _load_keys(args.keys)
        if keys is None:
            return EXIT_USAGE

    try:
        solutions = _solve(system, keys, args, settings)
    except (SearchBudgetExceeded, BudgetExceeded) as exception:
        logger.error(str(exception))
        return EXIT_USAGE

    if solutions.total is not None:
        print(f"solutions: {solutions.total}")
    else:
        print(f"solutions: more than {len(solutions)}")
    if not solutions.exhaustive:
        logger.warning("Listing capped at %d solutions", len(solutions))
    for solution in solutions.solutions:
        print(f"F = {solution}")

    if keys is not None:
        F = Assignment(keys.F)
        recovered = system.is_satisfied_by(F)
        print(f"recovered: {str(recovered).lower()}")
        if recovered:
            try:
                recover_g(keys, F, bits=system.bits)
            except InconsistentSolution as exception:
                logger.error(str(exception))
                return EXIT_FAILED
    return EXIT_OK if solutions.has_solutions else EXIT_FAILED


def cmd_export_cnf(args: Namespace, settings: Settings) -> int:
    system = _load_system(args.system)
    if system is None:
        return EXIT_USAGE
    write_cnf(system, args.out)
    print(f"Wrote {args.out}")
    return EXIT_OK


def cmd_bench(args: Namespace, settings: Settings) -> int:
    try:
        for N in args.n_list:
            NtruParams(N, args.q)
    except ValueError as exception:
        logger.error(str(exception))
        return EXIT_USAGE
    records = run_bench(args.n_list, args.q, args.seed, args.trials, args.bits, settings, Backend(args.backend))
    write_csv(records, args.csv)
    failed = sum(1 for r in records if r.n_solutions < 0)
    missed = sum(1 for r in records if r.n_solutions >= 0 and not r.recovered)
    print(f"Wrote {len(records)} rows to {args.csv}: {failed} failed, {missed} not recovered")
    return EXIT_OK if not failed and not missed else EXIT_FAILED


def cmd_selftest(args: Namespace, settings: Settings) -> int:
    entries = run_selftest()
    for entry in entries:
        print(entry)
    return EXIT_OK if passed(entries) else EXIT_FAILED
