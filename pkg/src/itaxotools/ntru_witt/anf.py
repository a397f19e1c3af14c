from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

logger = logging.getLogger(__name__)

MAX_VARS = 64

# Rows of an outer product handled at once when multiplying large polynomials
PRODUCT_CHUNK = 1 << 22

_EMPTY = np.zeros(0, dtype=np.uint64)
_EMPTY.flags.writeable = False


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


def _odd_multiplicity(monomials: np.ndarray) -> np.ndarray:
    if monomials.size == 0:
        return _EMPTY
    values, counts = np.unique(monomials, return_counts=True)
    return values[counts & 1 == 1]


def monomial_of(variables: Iterable[int]) -> int:
    mask = 0
    for i in variables:
        if not 0 <= i < MAX_VARS:
            raise ValueError(f"variable index out of range: {i}")
        mask |= 1 << i
    return mask


def monomial_variables(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def render_monomial(mask: int) -> str:
    if mask == 0:
        return "1"
    return "*".join(f"x{i}" for i in monomial_variables(mask))


class AnfPoly:
    __slots__ = ("monomials",)

    def __init__(self, monomials: np.ndarray = _EMPTY):
        self.monomials = monomials if monomials is _EMPTY else _frozen(monomials)

    @classmethod
    def from_monomials(cls, monomials: Iterable[int]) -> AnfPoly:
        array = np.fromiter((int(m) for m in monomials), dtype=np.uint64)
        return cls(_odd_multiplicity(array))

    @classmethod
    def zero(cls) -> AnfPoly:
        return cls()

    @classmethod
    def one(cls) -> AnfPoly:
        return cls(np.zeros(1, dtype=np.uint64))

    @classmethod
    def constant(cls, bit: int) -> AnfPoly:
        return cls.one() if bit & 1 else cls.zero()

    @classmethod
    def variable(cls, i: int) -> AnfPoly:
        return cls(np.array([monomial_of([i])], dtype=np.uint64))

    def __len__(self) -> int:
        return int(self.monomials.size)

    def __iter__(self):
        return (int(m) for m in self.monomials)

    def __bool__(self) -> bool:
        return self.monomials.size > 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = AnfPoly.constant(other) if other in (0, 1) else None
        if not isinstance(other, AnfPoly):
            return NotImplemented
        return np.array_equal(self.monomials, other.monomials)

    def __hash__(self) -> int:
        return hash(self.monomials.tobytes())

    def __add__(self, other: AnfPoly) -> AnfPoly:
        if not self:
            return other
        if not other:
            return self
        return AnfPoly(np.setxor1d(self.monomials, other.monomials, assume_unique=True))

    __sub__ = __add__

    def __mul__(self, other: AnfPoly) -> AnfPoly:
        if not self or not other:
            return AnfPoly.zero()
        if self.is_one():
            return other
        if other.is_one():
            return self
        a, b = self.monomials, other.monomials
        if a.size < b.size:
            a, b = b, a
        rows = max(1, PRODUCT_CHUNK // b.size)
        result = _EMPTY
        for start in range(0, a.size, rows):
            block = np.bitwise_or.outer(a[start : start + rows], b).ravel()
            result = np.setxor1d(result, _odd_multiplicity(block), assume_unique=True)
        return AnfPoly(result)

    def is_one(self) -> bool:
        return self.monomials.size == 1 and self.monomials[0] == 0

    def degree(self) -> int:
        """Largest monomial degree; 0 for the zero polynomial."""
        if not self:
            return 0
        return int(np.bitwise_count(self.monomials).max())

    def support(self) -> int:
        return int(np.bitwise_or.reduce(self.monomials)) if self else 0

    def variables(self) -> list[int]:
        return monomial_variables(self.support())

    def leading_variable_bound(self) -> int:
        return self.support().bit_length()

    def evaluate(self, mask: int) -> int:
        point = np.uint64(mask)
        return int(np.count_nonzero((self.monomials & point) == self.monomials) & 1)

    def substitute(self, var: int, bit: int) -> AnfPoly:
        flag = np.uint64(1 << var)
        touched = (self.monomials & flag) != 0
        if not touched.any():
            return self
        if bit & 1:
            return AnfPoly(_odd_multiplicity(self.monomials & ~flag))
        return AnfPoly(self.monomials[~touched])

    def __str__(self) -> str:
        if not self:
            return "0"
        return " + ".join(render_monomial(m) for m in self)

    def __repr__(self) -> str:
        return f"AnfPoly({str(self)!r})"


class AnfRing:
    def zero(self) -> AnfPoly:
        return AnfPoly.zero()

    def one(self) -> AnfPoly:
        return AnfPoly.one()

    def add(self, a: AnfPoly, b: AnfPoly) -> AnfPoly:
        return a + b

    def mul(self, a: AnfPoly, b: AnfPoly) -> AnfPoly:
        return a * b


ANF = AnfRing()


@dataclass(frozen=True)
class Assignment:
    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("assignment bits must be 0 or 1")

    @classmethod
    def from_mask(cls, mask: int, n_vars: int) -> Assignment:
        return cls(tuple((mask >> i) & 1 for i in range(n_vars)))

    @classmethod
    def from_string(cls, text: str) -> Assignment:
        if any(c not in "01" for c in text):
            raise ValueError(f"not a bitstring: {text!r}")
        return cls(tuple(int(c) for c in text))

    @property
    def mask(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def anf_add(a: AnfPoly, b: AnfPoly) -> AnfPoly:
    return a + b


def anf_mul(a: AnfPoly, b: AnfPoly) -> AnfPoly:
    return a * b


def anf_eval(p: AnfPoly, a: Assignment | Sequence[int]) -> int:
    if not isinstance(a, Assignment):
        a = Assignment(tuple(a))
    if p.leading_variable_bound() > len(a):
        raise ValueError(f"assignment of length {len(a)} does not cover variable x{p.leading_variable_bound() - 1}")
    return p.evaluate(a.mask)


def stats(p: AnfPoly) -> tuple[int, int]:
    return p.degree(), len(p)


def parse_anf(text: str) -> AnfPoly:
    text = text.strip()
    if text == "0":
        return AnfPoly.zero()
    monomials = []
    for term in text.split(" + "):
        term = term.strip()
        if term == "1":
            monomials.append(0)
            continue
        indices = []
        for factor in term.split("*"):
            if not factor.startswith("x") or not factor[1:].isdigit():
                raise ValueError(f"ill formatted monomial: {term!r}")
            indices.append(int(factor[1:]))
        monomials.append(monomial_of(indices))
    return AnfPoly.from_monomials(monomials)


def witness(p: AnfPoly, n_vars: int) -> Assignment:
    """Lowest-weight assignment at which p evaluates to 1; p must be nonzero."""
    if not p:
        raise ValueError("the zero polynomial has no witness")
    degrees = np.bitwise_count(p.monomials)
    mask = int(p.monomials[int(np.argmin(degrees))])
    return Assignment.from_mask(mask, n_vars)
