from __future__ import annotations

import logging
from itertools import product
from typing import Callable

import numpy as np

from .anf import AnfPoly, Assignment
from .attack import build_symbolic_coeffs, cross_check, generate_system, recover_g
from .groebner import buchberger, solutions_from_basis
from .ring import NtruParams, keygen
from .solve import solve_exhaustive
from .types import ListLogger, LogEntry, LogType, Reading
from .witt import closed_form_sum, from_residue, to_residue, witt_add, witt_mul, witt_sum_fold

logger = logging.getLogger(__name__)

RESIDUES = range(16)


class Suite:
    def __init__(self, name: str):
        self.name = name
        self.entries: list[LogEntry] = []
        self.errors = ListLogger(self.entries, LogType.Error)
        self.warnings = ListLogger(self.entries, LogType.Warning)
        self.passed = 0
        self.total = 0

    def check(self, ok: bool, description: str, content: dict):
        self.total += 1
        if ok:
            self.passed += 1
        else:
            self.errors.handle(description, {"suite": self.name, **content})

    def result(self) -> list[LogEntry]:
        kind = LogType.Info if self.passed == self.total else LogType.Error
        summary = LogEntry(kind, f"{self.passed}/{self.total} checks passed", {"suite": self.name})
        return [summary] + self.entries


def witt_pairs() -> list[LogEntry]:
    suite = Suite("witt pairs")
    for a, b in product(RESIDUES, RESIDUES):
        x, y = from_residue(a), from_residue(b)
        total = to_residue(witt_add(x, y))
        suite.check(total == (a + b) % 16, "sum differs from the integer sum", {"a": a, "b": b, "got": total})
        prod = to_residue(witt_mul(x, y))
        suite.check(prod == (a * b) % 16, "product differs from the integer product", {"a": a, "b": b, "got": prod})
    return suite.result()


def witt_distributivity() -> list[LogEntry]:
    suite = Suite("witt distributivity")
    for a, b, c in product(RESIDUES, RESIDUES, RESIDUES):
        x, y, z = from_residue(a), from_residue(b), from_residue(c)
        left = witt_mul(x, witt_add(y, z))
        right = witt_add(witt_mul(x, y), witt_mul(x, z))
        suite.check(left == right, "a(b + c) differs from ab + ac", {"a": a, "b": b, "c": c})
    return suite.result()


def _random_terms(rng: np.random.Generator, size: int) -> list[int]:
    return [int(r) for r in rng.integers(0, 16, size=size)]


def multi_term_sums(seed: int = 0, samples: int = 10_000) -> list[LogEntry]:
    suite = Suite("multi-term sums")
    rng = np.random.default_rng(seed)
    corpus = [list(t) for s in range(1, 5) for t in product(RESIDUES, repeat=s)]
    corpus += [_random_terms(rng, int(rng.integers(1, 13))) for _ in range(samples)]
    for residues in corpus:
        terms = [from_residue(r) for r in residues]
        expected = from_residue(sum(residues) % 16)
        fold = witt_sum_fold(terms)
        suite.check(fold == expected, "fold differs from the integer sum", {"terms": residues})
        closed = closed_form_sum(terms)
        suite.check(closed == fold, "closed form differs from the fold", {"terms": residues, "closed": closed, "fold": fold})
    return suite.result()


def printed_reading(seed: int = 0, per_size: int = 200) -> list[LogEntry]:
    suite = Suite("printed reading")
    rng = np.random.default_rng(seed)
    for s in range(1, 13):
        for _ in range(per_size):
            residues = _random_terms(rng, s)
            terms = [from_residue(r) for r in residues]
            printed = closed_form_sum(terms, reading=Reading.Printed)
            fold = witt_sum_fold(terms)
            if printed.components[:3] != fold.components[:3]:
                suite.check(False, "printed components 0 to 2 differ from the fold", {"terms": residues})
                return suite.result()
            if printed != fold:
                suite.warnings.handle(
                    "printed component 3 differs from the fold",
                    {"suite": suite.name, "terms": residues, "printed": printed.b3, "fold": fold.b3},
                )
                return suite.result()
    suite.entries.append(LogEntry(LogType.Info, "no counterexample found", {"suite": suite.name}))
    return suite.result()


def _random_anf(rng: np.random.Generator, n_vars: int) -> AnfPoly:
    count = int(rng.integers(0, 12))
    return AnfPoly.from_monomials(int(m) for m in rng.integers(0, 1 << n_vars, size=count))


def anf_truth_tables(seed: int = 0, trials: int = 200, n_vars: int = 6) -> list[LogEntry]:
    suite = Suite("anf truth tables")
    rng = np.random.default_rng(seed)
    points = range(1 << n_vars)
    operations: list[tuple[str, Callable, Callable]] = [
        ("add", lambda a, b: a + b, lambda x, y: x ^ y),
        ("mul", lambda a, b: a * b, lambda x, y: x & y),
    ]
    for _ in range(trials):
        a, b = _random_anf(rng, n_vars), _random_anf(rng, n_vars)
        for name, symbolic, pointwise in operations:
            c = symbolic(a, b)
            ok = all(c.evaluate(x) == pointwise(a.evaluate(x), b.evaluate(x)) for x in points)
            suite.check(ok, f"{name} disagrees with its truth table", {"a": a, "b": b})
    return suite.result()


def closed_forms(seed: int = 0, N: int = 7) -> list[LogEntry]:
    suite = Suite("expanded equations")
    coeffs = build_symbolic_coeffs(keygen(NtruParams(N, 128), seed))
    for k in range(N):
        mismatches = cross_check(coeffs, k, Reading.Amended)
        suite.check(not mismatches, "amended expansion differs from the Witt sum", {"k": k})
    printed = [entry for k in range(N) for entry in cross_check(coeffs, k, Reading.Printed)]
    for entry in printed[:1]:
        suite.warnings.handle(entry.text, {"suite": suite.name, **entry.content})
    return suite.result()


def end_to_end(seed: int = 0, N: int = 7) -> list[LogEntry]:
    suite = Suite("end to end")
    keys = keygen(NtruParams(N, 128), seed)
    F = Assignment(keys.F)
    system = generate_system(keys, 4)
    suite.check(system.is_satisfied_by(F), "the key does not satisfy its equations", {"N": N, "seed": seed})

    exhaustive = solve_exhaustive(system, keys.public)
    suite.check(F in exhaustive, "exhaustive search missed the key", {"N": N, "seed": seed})
    groebner = solutions_from_basis(buchberger(system))
    suite.check(groebner.as_set() == exhaustive.as_set(), "backends disagree", {"N": N, "seed": seed})
    suite.check(recover_g(keys, F) == keys.g, "recovered g differs", {"N": N, "seed": seed})
    return suite.result()


SUITES: list[Callable[[], list[LogEntry]]] = [
    witt_pairs,
    witt_distributivity,
    multi_term_sums,
    printed_reading,
    anf_truth_tables,
    closed_forms,
    end_to_end,
]


def run_selftest() -> list[LogEntry]:
    entries = []
    for suite in SUITES:
        logger.debug("Running %s", suite.__name__)
        entries.extend(suite())
    return entries


def passed(entries: list[LogEntry]) -> bool:
    return not any(entry.type is LogType.Error for entry in entries)
