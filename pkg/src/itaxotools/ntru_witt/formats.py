from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterator

from .anf import AnfPoly, monomial_variables, parse_anf, render_monomial
from .attack import Equation, EquationSystem
from .ring import NotInvertible, NtruKeySet, NtruParams, make_keyset
from .types import BitLevel

logger = logging.getLogger(__name__)

KEY_HEADER = "ntru-witt-keys v1"
ANF_HEADER = "ntru-witt-anf v1"


class FormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _write(path: Path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(text)


def _lines(path: Path) -> Iterator[tuple[int, str]]:
    with open(path, encoding="utf-8") as file:
        for number, line in enumerate(file, start=1):
            yield number, line.rstrip("\n")


def _bitstring(bits) -> str:
    return "".join(str(int(b)) for b in bits)


def format_key_file(keys: NtruKeySet) -> str:
    lines = [
        KEY_HEADER,
        f"N {keys.params.N}",
        f"q {keys.params.q}",
        f"seed {keys.seed}",
        f"F {_bitstring(keys.F)}",
        f"g {_bitstring(keys.g)}",
        "h " + " ".join(str(c) for c in keys.h.to_list()),
    ]
    return "\n".join(lines) + "\n"


def write_key_file(keys: NtruKeySet, path: Path):
    _write(path, format_key_file(keys))


def _field(lines: Iterator[tuple[int, str]], name: str, previous: int) -> tuple[int, str]:
    try:
        number, line = next(lines)
    except StopIteration:
        raise FormatError(f"missing field {name!r}", previous + 1) from None
    label, _, value = line.partition(" ")
    if label != name:
        raise FormatError(f"expected field {name!r}, found {line!r}", number)
    return number, value


def _integer(value: str, number: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise FormatError(f"not an integer: {value!r}", number) from None


def _bits(value: str, N: int, number: int) -> tuple[int, ...]:
    if len(value) != N or any(c not in "01" for c in value):
        raise FormatError(f"expected a bitstring of length {N}", number)
    return tuple(int(c) for c in value)


def read_key_file(path: Path) -> NtruKeySet:
    lines = _lines(path)
    number, header = next(lines, (1, ""))
    if header != KEY_HEADER:
        raise FormatError(f"expected header {KEY_HEADER!r}", number)

    n_line, value = _field(lines, "N", number)
    N = _integer(value, n_line)
    number, value = _field(lines, "q", n_line)
    q = _integer(value, number)
    try:
        params = NtruParams(N, q)
    except ValueError as exception:
        message = str(exception)
        raise FormatError(message, n_line if message.startswith("N") else number) from None
    number, value = _field(lines, "seed", number)
    seed = _integer(value, number)
    number, value = _field(lines, "F", number)
    F = _bits(value, N, number)
    number, value = _field(lines, "g", number)
    g = _bits(value, N, number)
    number, value = _field(lines, "h", number)
    h = [_integer(c, number) for c in value.split()]
    if len(h) != N or any(not 0 <= c < q for c in h):
        raise FormatError(f"expected {N} residues in [0, {q})", number)

    try:
        keys = make_keyset(params, F, g, seed)
    except NotInvertible:
        raise FormatError("f = 1 + (2 + X) F is not invertible", number) from None
    if keys.h.to_list() != h:
        raise FormatError("h does not match F and g", number)
    return keys


def format_anf_system(system: EquationSystem) -> str:
    lines = [ANF_HEADER, f"vars {system.n_vars}", f"eqs {len(system.equations)}"]
    for eq in system.equations:
        lines.append(f"# bit {int(eq.level)} k {eq.k}")
        lines.append(str(eq.poly))
    return "\n".join(lines) + "\n"


def write_anf_system(system: EquationSystem, path: Path):
    _write(path, format_anf_system(system))


def read_anf_system(path: Path) -> EquationSystem:
    lines = _lines(path)
    number, header = next(lines, (1, ""))
    if header != ANF_HEADER:
        raise FormatError(f"expected header {ANF_HEADER!r}", number)
    number, value = _field(lines, "vars", number)
    n_vars = _integer(value, number)
    number, value = _field(lines, "eqs", number)
    count = _integer(value, number)

    equations = []
    for _ in range(count):
        number, value = _field(lines, "#", number)
        parts = value.split()
        if len(parts) != 4 or parts[0] != "bit" or parts[2] != "k":
            raise FormatError(f"expected '# bit <level> k <k>', found {value!r}", number)
        try:
            level = BitLevel(_integer(parts[1], number))
        except ValueError:
            raise FormatError(f"unknown bit level {parts[1]}", number) from None
        k = _integer(parts[3], number)
        try:
            number, text = next(lines)
        except StopIteration:
            raise FormatError("missing polynomial", number + 1) from None
        try:
            poly = parse_anf(text)
        except ValueError as exception:
            raise FormatError(str(exception), number) from None
        if poly.leading_variable_bound() > n_vars:
            raise FormatError(f"variable beyond x{n_vars - 1}", number)
        equations.append(Equation(level, k, poly))

    for number, line in lines:
        if line.strip():
            raise FormatError("trailing content after the last equation", number)
    return EquationSystem(n_vars, tuple(equations))


def format_cnf(system: EquationSystem) -> str:
    """Extended DIMACS: AND clauses define one variable per nonlinear monomial, each equation is an XOR clause."""
    n_vars = system.n_vars
    nonlinear = sorted({m for poly in system.polynomials() for m in poly if m.bit_count() > 1})
    index = {1 << i: i + 1 for i in range(n_vars)}
    index.update({m: n_vars + 1 + j for j, m in enumerate(nonlinear)})

    clauses = []
    for m in nonlinear:
        t = index[m]
        factors = [i + 1 for i in monomial_variables(m)]
        clauses.extend(f"-{t} {v} 0" for v in factors)
        clauses.append(" ".join([str(t)] + [f"-{v}" for v in factors] + ["0"]))

    for eq in system.equations:
        literals = sorted(index[m] for m in eq.poly if m)
        constant = _has_constant(eq.poly)
        if not literals:
            if constant:
                clauses.extend(["1 0", "-1 0"])
            continue
        if not constant:
            literals[0] = -literals[0]
        clauses.append("x" + " ".join(str(v) for v in literals) + " 0")

    comments = ["c ntru-witt extended DIMACS, XOR clauses prefixed by x"]
    comments += [f"c var {index[m]} = {render_monomial(m)}" for m in sorted(index, key=index.get)]
    header = f"p cnf {len(index)} {len(clauses)}"
    return "\n".join(comments + [header] + clauses) + "\n"


def _has_constant(poly: AnfPoly) -> bool:
    return len(poly) > 0 and int(poly.monomials[0]) == 0


def write_cnf(system: EquationSystem, path: Path):
    _write(path, format_cnf(system))
