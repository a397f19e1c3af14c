from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import numpy as np
from mpyc.gfpx import GFpX

gf2x = GFpX(2)

logger = logging.getLogger(__name__)

MAX_REDRAWS = 1000
MAX_N = 64
MAX_Q = 1 << 16


class NotInvertible(ArithmeticError):
    pass


class KeygenFailure(RuntimeError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class NtruParams:
    N: int
    q: int

    def __post_init__(self):
        if not is_prime(self.N):
            raise ValueError(f"N must be prime, got {self.N}")
        if not 5 <= self.N <= MAX_N:
            raise ValueError(f"N must lie in [5, {MAX_N}], got {self.N}")
        if self.q < 16 or self.q & (self.q - 1):
            raise ValueError(f"q must be a power of two of at least 16, got {self.q}")
        if self.q > MAX_Q:
            raise ValueError(f"q must not exceed {MAX_Q}, got {self.q}")

    @property
    def m(self) -> int:
        return self.q.bit_length() - 1


def circulant(b: np.ndarray) -> np.ndarray:
    """Matrix C with C[k, i] = b[(k - i) mod n], so that C @ a is the cyclic convolution of a and b."""
    n = len(b)
    index = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return np.asarray(b)[index]


class ZqPoly:
    __slots__ = ("params", "coeffs")

    def __init__(self, params: NtruParams, coeffs: Sequence[int] | np.ndarray):
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if coeffs.shape != (params.N,):
            raise ValueError(f"expected {params.N} coefficients, got shape {coeffs.shape}")
        self.params = params
        self.coeffs = np.mod(coeffs, params.q)
        self.coeffs.flags.writeable = False

    @classmethod
    def constant(cls, params: NtruParams, value: int) -> ZqPoly:
        coeffs = np.zeros(params.N, dtype=np.int64)
        coeffs[0] = value
        return cls(params, coeffs)

    @classmethod
    def one(cls, params: NtruParams) -> ZqPoly:
        return cls.constant(params, 1)

    @classmethod
    def monomial(cls, params: NtruParams, power: int) -> ZqPoly:
        coeffs = np.zeros(params.N, dtype=np.int64)
        coeffs[power % params.N] = 1
        return cls(params, coeffs)

    @classmethod
    def p(cls, params: NtruParams) -> ZqPoly:
        coeffs = np.zeros(params.N, dtype=np.int64)
        coeffs[0] = 2
        coeffs[1] = 1
        return cls(params, coeffs)

    def reduce(self, modulus: int) -> np.ndarray:
        return self.coeffs % modulus

    def to_list(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def _check(self, other: ZqPoly):
        if not isinstance(other, ZqPoly):
            raise TypeError(f"expected ZqPoly, got {type(other).__name__}")
        if other.params != self.params:
            raise ValueError(f"parameter mismatch: {self.params} vs {other.params}")

    def __add__(self, other: ZqPoly) -> ZqPoly:
        self._check(other)
        return ZqPoly(self.params, self.coeffs + other.coeffs)

    def __sub__(self, other: ZqPoly) -> ZqPoly:
        self._check(other)
        return ZqPoly(self.params, self.coeffs - other.coeffs)

    def __mul__(self, other: ZqPoly) -> ZqPoly:
        return poly_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZqPoly):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.params, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"ZqPoly(N={self.params.N}, q={self.params.q}, {self.to_list()})"


def poly_mul(a: ZqPoly, b: ZqPoly) -> ZqPoly:
    a._check(b)
    return ZqPoly(a.params, circulant(b.coeffs) @ a.coeffs)


def to_gf2(a: ZqPoly | Sequence[int]) -> int:
    coeffs = a.coeffs if isinstance(a, ZqPoly) else a
    return sum(1 << i for i, c in enumerate(coeffs) if int(c) & 1)


def invert_mod2(a: int, N: int) -> int:
    """Inverse of a in GF(2)[X]/(X^N - 1) by the extended Euclidean algorithm; bit i of a is the coefficient of X^i."""
    modulus = (1 << N) | 1
    try:
        inverse = gf2x.invert(gf2x.mod(a, modulus), modulus).value
    except ZeroDivisionError as exception:
        raise NotInvertible(f"polynomial {gf2x.to_terms(a, 'X')} shares a factor with X^{N} - 1") from exception
    assert gf2x.mod(gf2x.mul(a, inverse), modulus).value == 1
    return inverse


def newton_steps(q: int) -> int:
    m = q.bit_length() - 1
    return math.ceil(math.log2(m)) if m > 1 else 0


def hensel_lift_inverse(a: ZqPoly, inv2: int) -> ZqPoly:
    params = a.params
    v = ZqPoly(params, [(inv2 >> i) & 1 for i in range(params.N)])
    one = ZqPoly.one(params)
    if not np.array_equal((a * v).reduce(2), one.coeffs):
        raise ValueError("given polynomial is not an inverse modulo 2")

    two = ZqPoly.constant(params, 2)
    steps = newton_steps(params.q)
    for _ in range(steps):
        v = v * (two - a * v)
    logger.debug("Lifted inverse to mod %d in %d Newton steps", params.q, steps)

    assert a * v == one
    return v


class PublicKey(Protocol):
    params: NtruParams
    h: ZqPoly
    seed: int


@dataclass(frozen=True)
class NtruPublicKey:
    params: NtruParams
    h: ZqPoly
    seed: int = 0


@dataclass(frozen=True)
class NtruKeySet:
    params: NtruParams
    F: tuple[int, ...]
    g: tuple[int, ...]
    f: ZqPoly
    h: ZqPoly
    seed: int
    redraws: int = field(default=0, compare=False)

    @property
    def public(self) -> NtruPublicKey:
        return NtruPublicKey(self.params, self.h, self.seed)


def make_keyset(params: NtruParams, F: Sequence[int], g: Sequence[int], seed: int = 0, redraws: int = 0) -> NtruKeySet:
    F = tuple(int(x) for x in F)
    g = tuple(int(x) for x in g)
    if len(F) != params.N or len(g) != params.N:
        raise ValueError(f"F and g must have {params.N} coefficients")
    if any(x not in (0, 1) for x in F + g):
        raise ValueError("F and g must be binary")

    p = ZqPoly.p(params)
    f = ZqPoly.one(params) + p * ZqPoly(params, F)
    f_inverse = hensel_lift_inverse(f, invert_mod2(to_gf2(f), params.N))
    h = p * f_inverse * ZqPoly(params, g)
    return NtruKeySet(params, F, g, f, h, seed, redraws)


def rng_for_seed(seed: int) -> np.random.Generator:
    if not 0 <= seed < 1 << 64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def keygen(params: NtruParams, seed: int) -> NtruKeySet:
    rng = rng_for_seed(seed)
    g = rng.integers(0, 2, size=params.N)
    for redraws in range(MAX_REDRAWS + 1):
        F = rng.integers(0, 2, size=params.N)
        try:
            keys = make_keyset(params, F, g, seed, redraws)
        except NotInvertible:
            logger.debug("Seed %d: f not invertible, redrawing F", seed)
            continue
        logger.debug("Seed %d: key set ready after %d redraws", seed, redraws)
        return keys
    raise KeygenFailure(f"no invertible f after {MAX_REDRAWS} redraws for seed {seed}")
