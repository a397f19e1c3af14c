"""Witt vectors of length 4 over F_2, identified with Z_16 by a0 + 2 a1 + 4 a2 + 8 a3."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Generic, Iterable, Protocol, Sequence, TypeVar

from .types import Reading

logger = logging.getLogger(__name__)

WIDTH = 4

T = TypeVar("T")


class BooleanRing(Protocol[T]):
    def zero(self) -> T: ...

    def one(self) -> T: ...

    def add(self, a: T, b: T) -> T: ...

    def mul(self, a: T, b: T) -> T: ...


class BitRing:
    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return a & b


BITS = BitRing()


@dataclass(frozen=True)
class WittVec(Generic[T]):
    b0: T
    b1: T
    b2: T
    b3: T

    @property
    def components(self) -> tuple[T, T, T, T]:
        return (self.b0, self.b1, self.b2, self.b3)

    @classmethod
    def zero(cls, ring: BooleanRing[T] = BITS) -> WittVec[T]:
        return cls(ring.zero(), ring.zero(), ring.zero(), ring.zero())

    def map(self, function) -> WittVec:
        return WittVec(*(function(c) for c in self.components))

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.components) + "]"


def from_residue(r: int) -> WittVec[int]:
    if not 0 <= r < 1 << WIDTH:
        raise ValueError(f"residue must lie in [0, 16), got {r}")
    return WittVec(r & 1, (r >> 1) & 1, (r >> 2) & 1, (r >> 3) & 1)


def to_residue(w: WittVec[int]) -> int:
    if any(c not in (0, 1) for c in w.components):
        raise ValueError(f"not a concrete bit vector: {w}")
    return w.b0 | w.b1 << 1 | w.b2 << 2 | w.b3 << 3


def lift(w: WittVec[int], ring: BooleanRing[T]) -> WittVec[T]:
    return w.map(lambda c: ring.one() if c else ring.zero())


def _sum(ring: BooleanRing[T], *values: T) -> T:
    return reduce(ring.add, values, ring.zero())


def _prod(ring: BooleanRing[T], *values: T) -> T:
    return reduce(ring.mul, values, ring.one())


def witt_add(a: WittVec[T], b: WittVec[T], ring: BooleanRing[T] = BITS) -> WittVec[T]:
    a0, a1, a2, a3 = a.components
    b0, b1, b2, b3 = b.components
    a0b0 = ring.mul(a0, b0)
    a1b1 = ring.mul(a1, b1)
    s0 = ring.add(a0, b0)
    s1 = _sum(ring, a0b0, a1, b1)
    s2 = _sum(ring, ring.mul(a0b0, ring.add(a1, b1)), a1b1, a2, b2)
    s3 = _sum(
        ring,
        _prod(ring, a0b0, a1, a2),
        _prod(ring, a0b0, a1, b2),
        _prod(ring, a0b0, b1, a2),
        _prod(ring, a0b0, b1, b2),
        ring.mul(a1b1, a2),
        ring.mul(a1b1, b2),
        ring.mul(a2, b2),
        a3,
        b3,
    )
    return WittVec(s0, s1, s2, s3)


def witt_mul(a: WittVec[T], b: WittVec[T], ring: BooleanRing[T] = BITS) -> WittVec[T]:
    a0, a1, a2, a3 = a.components
    b0, b1, b2, b3 = b.components
    a0b0 = ring.mul(a0, b0)
    a1b1 = ring.mul(a1, b1)
    a0b0a1b1 = ring.mul(a0b0, a1b1)
    p0 = a0b0
    p1 = ring.add(ring.mul(a0, b1), ring.mul(a1, b0))
    p2 = _sum(ring, a0b0a1b1, ring.mul(a0, b2), a1b1, ring.mul(a2, b0))
    p3 = _sum(
        ring,
        ring.mul(a0b0a1b1, a2),
        ring.mul(a0b0a1b1, b2),
        a0b0a1b1,
        _prod(ring, a0b0, a2, b2),
        _prod(ring, a0, a1b1, b2),
        _prod(ring, b0, a1b1, a2),
        ring.mul(a0, b3),
        ring.mul(b0, a3),
        ring.mul(a1, b2),
        ring.mul(b1, a2),
    )
    return WittVec(p0, p1, p2, p3)


def witt_sum_fold(terms: Iterable[WittVec[T]], ring: BooleanRing[T] = BITS) -> WittVec[T]:
    return reduce(lambda acc, term: witt_add(acc, term, ring), terms, WittVec.zero(ring))


def elementary_symmetric(values: Sequence[T], degree: int, ring: BooleanRing[T] = BITS) -> list[T]:
    e = [ring.one()] + [ring.zero()] * degree
    for count, x in enumerate(values, start=1):
        for t in range(min(degree, count), 0, -1):
            e[t] = ring.add(e[t], ring.mul(e[t - 1], x))
    return e


@dataclass(frozen=True)
class SymmetricSlices(Generic[T]):
    """Elementary symmetric sums of the four component slices of a list of terms.

    u, v, w, z hold e_t of the component 0, 1, 2 and 3 slices respectively.
    """

    u: list[T]
    v: list[T]
    w: list[T]
    z: list[T]

    @classmethod
    def from_components(cls, slices: Sequence[Sequence[T]], ring: BooleanRing[T], bits: int = WIDTH) -> SymmetricSlices[T]:
        degrees = [[1, 2, 4, 8][bits - 1], [0, 1, 2, 4][bits - 1], [0, 0, 1, 2][bits - 1], [0, 0, 0, 1][bits - 1]]
        return cls(*(elementary_symmetric(values, degree, ring) for values, degree in zip(slices, degrees)))


def combine_slices(e: SymmetricSlices[T], ring: BooleanRing[T], bits: int = WIDTH, reading: Reading = Reading.Amended) -> WittVec[T]:
    """Closed forms of the s-term sum laws in terms of the slice sums.

    The component 3 form is printed with a missing connective before its last
    two blocks; Amended reads it as "+", Printed as a product.
    """
    u, v, w, z = e.u, e.v, e.w, e.z
    mul, add = ring.mul, ring.add
    zero = ring.zero()
    s0 = u[1]
    s1 = add(u[2], v[1]) if bits > 1 else zero
    s2 = _sum(ring, mul(v[1], u[2]), v[2], w[1], u[4]) if bits > 2 else zero
    s3 = zero
    if bits > 3:
        head = _sum(
            ring,
            z[1],
            w[2],
            mul(w[1], v[2]),
            _prod(ring, u[2], v[1], w[1]),
            mul(u[2], v[3]),
            mul(u[4], add(w[1], v[2])),
        )
        if reading is Reading.Amended:
            tail = _sum(ring, v[4], mul(v[1], u[6]), u[8])
        else:
            tail = add(_prod(ring, v[4], v[1], u[6]), u[8])
        s3 = add(head, tail)
    return WittVec(s0, s1, s2, s3)


def closed_form_sum(
    terms: Sequence[WittVec[T]],
    ring: BooleanRing[T] = BITS,
    *,
    bits: int = WIDTH,
    reading: Reading = Reading.Amended,
) -> WittVec[T]:
    """Sum of many Witt vectors through elementary symmetric polynomials.

    Only the first `bits` components are computed, the others are zero.
    """
    if not 1 <= bits <= WIDTH:
        raise ValueError(f"bits must lie in [1, {WIDTH}], got {bits}")
    if not terms:
        return WittVec.zero(ring)
    slices = [[t.components[j] for t in terms] for j in range(WIDTH)]
    e = SymmetricSlices.from_components(slices, ring, bits)
    return combine_slices(e, ring, bits, reading)
