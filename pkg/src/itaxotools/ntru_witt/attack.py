"""Equation systems in the secret bits F_0 .. F_{N-1}.

The relation f * h = p * g holds modulo 16 because 16 divides q. Written
coefficient by coefficient in W_4[F_2], with L_k the Witt coefficient of f * h
and R_k = [g_{k-1}, g_k, 0, 0] the one of p * g:

- component 0 defines g_{k-1} = L_{k,0}, affine in F, and is never emitted;
- component 1 gives L_{k,1} + L_{k+1,0} = 0, quadratic;
- component 2 gives L_{k,2} = 0, of degree at most 4;
- component 3 gives L_{k,3} = 0, of degree at most 8.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from statistics import fmean
from time import perf_counter

import numpy as np

from .anf import ANF, AnfPoly, Assignment, stats, witness
from .ring import NtruParams, PublicKey, ZqPoly
from .types import BitLevel, ListLogger, LogEntry, LogType, Reading, SumMethod
from .witt import WIDTH, SymmetricSlices, WittVec, closed_form_sum, from_residue, lift, witt_mul, witt_sum_fold

logger = logging.getLogger(__name__)

WITT_MODULUS = 1 << WIDTH


class InconsistentSolution(ValueError):
    pass


@dataclass(frozen=True)
class SymbolicKeyCoeffs:
    params: NtruParams
    f_witt: tuple[WittVec[AnfPoly], ...]
    h_witt: tuple[WittVec[int], ...]

    @property
    def N(self) -> int:
        return self.params.N


def symbolic_f(N: int) -> tuple[WittVec[AnfPoly], ...]:
    F = [AnfPoly.variable(i) for i in range(N)]
    zero = AnfPoly.zero()
    first = WittVec(AnfPoly.one() + F[N - 1], F[0] + F[N - 1], F[0] * F[N - 1], zero)
    return (first,) + tuple(WittVec(F[i - 1], F[i], zero, zero) for i in range(1, N))


def build_symbolic_coeffs(key: PublicKey) -> SymbolicKeyCoeffs:
    params = key.params
    if params.q < WITT_MODULUS:
        raise ValueError(f"q must be at least {WITT_MODULUS}, got {params.q}")
    h_witt = tuple(from_residue(int(c)) for c in key.h.reduce(WITT_MODULUS))
    return SymbolicKeyCoeffs(params, symbolic_f(params.N), h_witt)


def _truncate(w: WittVec[AnfPoly], bits: int) -> WittVec[AnfPoly]:
    zero = AnfPoly.zero()
    return WittVec(*(c if j < bits else zero for j, c in enumerate(w.components)))


def witt_terms(coeffs: SymbolicKeyCoeffs, k: int) -> list[WittVec[AnfPoly]]:
    N = coeffs.N
    return [witt_mul(coeffs.f_witt[i], lift(coeffs.h_witt[(k - i) % N], ANF), ANF) for i in range(N)]


def compute_L(coeffs: SymbolicKeyCoeffs, k: int, *, bits: int = WIDTH, method: SumMethod = SumMethod.Symmetric) -> WittVec[AnfPoly]:
    """Witt coefficient k of f * h; components at and above `bits` are left zero."""
    if not 0 <= k < coeffs.N:
        raise ValueError(f"k must lie in [0, {coeffs.N}), got {k}")
    terms = witt_terms(coeffs, k)
    if method is SumMethod.Fold:
        return witt_sum_fold((_truncate(t, bits) for t in terms), ANF)
    return closed_form_sum(terms, ANF, bits=bits)


def g_definitions(coeffs: SymbolicKeyCoeffs) -> tuple[AnfPoly, ...]:
    N = coeffs.N
    return tuple(compute_L(coeffs, (j + 1) % N, bits=1).b0 for j in range(N))


@dataclass(frozen=True)
class Equation:
    level: BitLevel
    k: int
    poly: AnfPoly


@dataclass(frozen=True)
class Provenance:
    params: NtruParams
    seed: int


@dataclass(frozen=True)
class EquationSystem:
    n_vars: int
    equations: tuple[Equation, ...]
    provenance: Provenance | None = field(default=None, compare=False)

    @property
    def levels(self) -> list[BitLevel]:
        return sorted({eq.level for eq in self.equations})

    @property
    def bits(self) -> int:
        return max(self.levels, default=0) + 1

    def polynomials(self) -> list[AnfPoly]:
        return [eq.poly for eq in self.equations]

    def by_level(self, level: BitLevel) -> list[Equation]:
        return [eq for eq in self.equations if eq.level == level]

    def is_satisfied_by(self, assignment: Assignment) -> bool:
        mask = assignment.mask
        return all(eq.poly.evaluate(mask) == 0 for eq in self.equations)


def _equation(L: list[WittVec[AnfPoly]], level: BitLevel, k: int) -> Equation:
    N = len(L)
    if level is BitLevel.Quadratic:
        poly = L[k].b1 + L[(k + 1) % N].b0
    else:
        poly = L[k].components[level]
    return Equation(level, k, poly)


def generate_system(key: PublicKey, bits: int, *, workers: int = 1, method: SumMethod = SumMethod.Symmetric) -> EquationSystem:
    if bits not in (2, 3, 4):
        raise ValueError(f"bits must be 2, 3 or 4, got {bits}")
    coeffs = build_symbolic_coeffs(key)
    N = coeffs.N

    start = perf_counter()
    with ThreadPoolExecutor(max_workers=workers) as executor:
        L = list(executor.map(lambda k: compute_L(coeffs, k, bits=bits, method=method), range(N)))
    logger.info("Built %d Witt coefficients of f*h (N=%d, bits=%d) in %.2fs", N, N, bits, perf_counter() - start)

    equations = tuple(_equation(L, level, k) for level in BitLevel if level < bits for k in range(N))
    return EquationSystem(N, equations, Provenance(key.params, key.seed))


def residues(key: PublicKey, assignment: Assignment) -> np.ndarray:
    """Coefficients of (1 + (2 + X) F) * h mod 16 for a candidate F."""
    params = key.params
    f = ZqPoly.one(params) + ZqPoly.p(params) * ZqPoly(params, assignment.bits)
    return (f * key.h).reduce(WITT_MODULUS)


def bit_conditions(c: np.ndarray, level: BitLevel) -> np.ndarray:
    """Numeric value of the level equations from residues mod 16, along the last axis."""
    if level is BitLevel.Quadratic:
        return ((c >> 1) & 1) ^ (np.roll(c, -1, axis=-1) & 1)
    return (c >> int(level)) & 1


def recover_g(key: PublicKey, F: Assignment, *, bits: int = WIDTH) -> tuple[int, ...]:
    """Read g off a solution and check f * h = p * g modulo 2^bits."""
    params = key.params
    if len(F) != params.N:
        raise ValueError(f"assignment must have {params.N} bits, got {len(F)}")
    coeffs = build_symbolic_coeffs(key)
    g = tuple(poly.evaluate(F.mask) for poly in g_definitions(coeffs))

    modulus = 1 << bits
    lhs = residues(key, F) % modulus
    rhs = (ZqPoly.p(params) * ZqPoly(params, g)).reduce(modulus)
    if not np.array_equal(lhs, rhs):
        raise InconsistentSolution(f"F={F} does not satisfy f*h = p*g mod {modulus}")
    return g


@dataclass(frozen=True)
class LevelStats:
    count: int
    max_degree: int
    max_terms: int
    mean_terms: float


def system_stats(system: EquationSystem) -> dict[BitLevel, LevelStats]:
    result = {}
    for level in system.levels:
        figures = [stats(eq.poly) for eq in system.by_level(level)]
        degrees = [d for d, _ in figures]
        terms = [t for _, t in figures]
        result[level] = LevelStats(len(figures), max(degrees), max(terms), fmean(terms))
    return result


@dataclass(frozen=True)
class Bit3Aux:
    A: AnfPoly
    B: AnfPoly
    C: AnfPoly
    D: AnfPoly


@dataclass(frozen=True)
class ClosedFormL:
    l2: AnfPoly
    l3: AnfPoly
    aux: Bit3Aux


def _expanded_components(f: WittVec[AnfPoly], h: WittVec[int]) -> tuple[AnfPoly, AnfPoly, AnfPoly, AnfPoly, AnfPoly]:
    """Components of f_i h_{i*} written out as in the expanded equations, plus the printed C_k summand."""
    f0, f1, f2, _ = f.components
    h0, h1, h2, h3 = (AnfPoly.constant(b) for b in h.components)
    f0h0f1h1 = f0 * h0 * f1 * h1
    f1h1 = f1 * h1
    a0 = f0 * h0
    a1 = f0 * h1 + f1 * h0
    a2 = f0h0f1h1 + f0 * h2 + f1h1 + f2 * h0
    a3 = (
        f0 * h0 * (f1h1 * f2 + f1h1 * h2 + f1h1 + f2 * h2)
        + f1h1 * (f0 * h2 + f2 * h0)
        + f0 * h3
        + f1 * h2
        + f2 * h1
    )
    printed_c = f0h0f1h1 + f0 * h1 + f1 * h0 + f1h1
    return a0, a1, a2, a3, printed_c


def closed_form_L2_L3(coeffs: SymbolicKeyCoeffs, k: int, reading: Reading = Reading.Amended) -> ClosedFormL:
    """The expanded expressions for L_{k,2} and L_{k,3} with their auxiliary sums A_k .. D_k.

    Printed keeps the definition of C_k as printed and reads the last "." as a
    product; Amended takes C_k as the sum of component-2 terms and reads "+".
    """
    N = coeffs.N
    rows = [_expanded_components(coeffs.f_witt[i], coeffs.h_witt[(k - i) % N]) for i in range(N)]
    slices = [[row[j] for row in rows] for j in range(WIDTH)]
    e = SymmetricSlices.from_components(slices, ANF)
    u, v, w, z = e.u, e.v, e.w, e.z

    A, B, D = v[2], u[2], v[1]
    if reading is Reading.Printed:
        C = sum((row[4] for row in rows), AnfPoly.zero())
        last = D * u[6] * u[8]
    else:
        C = w[1]
        last = D * u[6] + u[8]

    l2 = v[1] * u[2] + v[2] + w[1] + u[4]
    l3 = z[1] + w[2] + C * A + B * D * C + B * v[3] + (C + A) * u[4] + v[4] + last
    return ClosedFormL(l2, l3, Bit3Aux(A, B, C, D))


def cross_check(
    coeffs: SymbolicKeyCoeffs,
    k: int,
    reading: Reading = Reading.Amended,
    method: SumMethod = SumMethod.Fold,
) -> list[LogEntry]:
    entries: list[LogEntry] = []
    report = ListLogger(entries, LogType.Warning)
    closed = closed_form_L2_L3(coeffs, k, reading)
    reference = compute_L(coeffs, k, method=method)
    for name, ours, theirs in (("L_k,2", closed.l2, reference.b2), ("L_k,3", closed.l3, reference.b3)):
        difference = ours + theirs
        if not difference:
            continue
        point = witness(difference, coeffs.N)
        report.handle(
            f"expanded {name} differs from the Witt sum",
            {
                "k": k,
                "reading": reading.name,
                "F": point,
                "expanded": ours.evaluate(point.mask),
                "sum": theirs.evaluate(point.mask),
            },
        )
        logger.warning("k=%d: %s (%s reading) differs at F=%s", k, name, reading.name, point)
    return entries
