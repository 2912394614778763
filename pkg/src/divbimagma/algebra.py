"""Finite unary semigroups and bimagmas as immutable operation tables.

Elements are the indices ``0..n-1``.  Tables are row-major: ``table[i][j]``
is ``i op j``, so the row label is the left argument.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

import numpy as np

__all__ = [
    "AlgebraError",
    "OutOfRangeEntry",
    "NonAssociative",
    "MalformedAlgebra",
    "FiniteUnarySemigroup",
    "FiniteBimagma",
    "FiniteSemigroup",
    "CanonicalForm",
    "validate",
    "is_idempotent",
    "idempotents",
    "relabel",
    "anti",
    "canonical_form",
    "canonical_keys",
    "is_isomorphic",
    "format_algebra",
    "parse_algebra",
    "read_algebra",
    "write_algebra",
]


class AlgebraError(ValueError):
    pass


class MalformedAlgebra(AlgebraError):
    pass


class OutOfRangeEntry(AlgebraError):
    def __init__(self, table: str, i: int, j: int | None, value: int):
        self.table, self.i, self.j, self.value = table, i, j, value
        where = f"{table}[{i}]" if j is None else f"{table}[{i}][{j}]"
        super().__init__(f"{where} = {value} is out of range")


class NonAssociative(AlgebraError):
    def __init__(self, i: int, j: int, k: int):
        self.triple = (i, j, k)
        super().__init__(f"(x*y)*z != x*(y*z) at x={i}, y={j}, z={k}")


def _as_table(rows, n: int | None, name: str) -> tuple[tuple[int, ...], ...]:
    table = tuple(tuple(int(v) for v in row) for row in rows)
    if n is None:
        n = len(table)
    if n < 1 or len(table) != n or any(len(row) != n for row in table):
        raise MalformedAlgebra(f"{name} table is not {n}x{n}")
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise OutOfRangeEntry(name, i, j, v)
    return table


def _first_nonassociative(mul: np.ndarray):
    # (i*j)*k vs i*(j*k) over all triples at once
    left = mul[mul]                      # left[i, j, k] = (i*j)*k
    right = mul[:, mul]                  # right[i, j, k] = i*(j*k)
    bad = np.argwhere(left != right)
    return tuple(int(v) for v in bad[0]) if len(bad) else None


@dataclass(frozen=True)
class FiniteSemigroup:
    """A plain semigroup table (no unary operation); used for counting."""

    mul: tuple[tuple[int, ...], ...]
    kind = "semigroup"

    def __post_init__(self):
        object.__setattr__(self, "mul", _as_table(self.mul, None, "mul"))
        bad = _first_nonassociative(np.array(self.mul))
        if bad:
            raise NonAssociative(*bad)

    @property
    def size(self) -> int:
        return len(self.mul)

    @cached_property
    def mul_array(self) -> np.ndarray:
        a = np.array(self.mul, dtype=np.int64)
        a.flags.writeable = False
        return a

    def cells(self) -> np.ndarray:
        return self.mul_array.ravel().copy()


@dataclass(frozen=True)
class FiniteUnarySemigroup:
    """``(S, *, ')``: an associative table plus an arbitrary unary map."""

    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    kind = "unary_semigroup"

    def __post_init__(self):
        mul = _as_table(self.mul, None, "mul")
        n = len(mul)
        inv = tuple(int(v) for v in self.inv)
        if len(inv) != n:
            raise MalformedAlgebra(f"inv has length {len(inv)}, expected {n}")
        for i, v in enumerate(inv):
            if not 0 <= v < n:
                raise OutOfRangeEntry("inv", i, None, v)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "inv", inv)
        bad = _first_nonassociative(np.array(mul))
        if bad:
            raise NonAssociative(*bad)

    @property
    def size(self) -> int:
        return len(self.mul)

    @cached_property
    def mul_array(self) -> np.ndarray:
        a = np.array(self.mul, dtype=np.int64)
        a.flags.writeable = False
        return a

    @cached_property
    def inv_array(self) -> np.ndarray:
        a = np.array(self.inv, dtype=np.int64)
        a.flags.writeable = False
        return a

    def cells(self) -> np.ndarray:
        return np.concatenate([self.mul_array.ravel(), self.inv_array])

    @classmethod
    def from_cells(cls, cells: Sequence[int], n: int) -> "FiniteUnarySemigroup":
        cells = list(cells)
        return cls([cells[i * n:(i + 1) * n] for i in range(n)], cells[n * n:])


@dataclass(frozen=True)
class FiniteBimagma:
    """``(S, \\, /)``: two tables, no laws assumed."""

    ld: tuple[tuple[int, ...], ...]
    rd: tuple[tuple[int, ...], ...]
    kind = "bimagma"

    def __post_init__(self):
        ld = _as_table(self.ld, None, "ld")
        rd = _as_table(self.rd, len(ld), "rd")
        object.__setattr__(self, "ld", ld)
        object.__setattr__(self, "rd", rd)

    @property
    def size(self) -> int:
        return len(self.ld)

    @cached_property
    def ld_array(self) -> np.ndarray:
        a = np.array(self.ld, dtype=np.int64)
        a.flags.writeable = False
        return a

    @cached_property
    def rd_array(self) -> np.ndarray:
        a = np.array(self.rd, dtype=np.int64)
        a.flags.writeable = False
        return a

    def cells(self) -> np.ndarray:
        return np.concatenate([self.ld_array.ravel(), self.rd_array.ravel()])

    @classmethod
    def from_cells(cls, cells: Sequence[int], n: int) -> "FiniteBimagma":
        cells = list(cells)
        nn = n * n
        return cls([cells[i * n:(i + 1) * n] for i in range(n)],
                   [cells[nn + i * n:nn + (i + 1) * n] for i in range(n)])


Algebra = Union[FiniteUnarySemigroup, FiniteBimagma, FiniteSemigroup]


def validate(mul=None, inv=None, *, ld=None, rd=None) -> Algebra:
    """Build a validated algebra from raw tables.

    Pass ``mul`` and ``inv`` for a unary semigroup, ``mul`` alone for a
    plain semigroup, or ``ld`` and ``rd`` for a bimagma.
    """
    if ld is not None or rd is not None:
        if mul is not None or inv is not None or ld is None or rd is None:
            raise MalformedAlgebra("a bimagma needs exactly ld and rd")
        return FiniteBimagma(ld, rd)
    if mul is None:
        raise MalformedAlgebra("no tables given")
    if inv is None:
        return FiniteSemigroup(mul)
    return FiniteUnarySemigroup(mul, inv)


def is_idempotent(S: FiniteUnarySemigroup | FiniteSemigroup, e: int) -> bool:
    if not 0 <= e < S.size:
        raise ValueError(f"element {e} out of range")
    return S.mul[e][e] == e


def idempotents(S: FiniteUnarySemigroup | FiniteSemigroup) -> list[int]:
    return [e for e in range(S.size) if S.mul[e][e] == e]


# -- relabeling and canonical forms -----------------------------------------

def _tables_of(kind: str, cells: np.ndarray, n: int):
    """Split flat cell arrays (shape (..., L)) into (binary tables, unary maps)."""
    nn = n * n
    lead = cells.shape[:-1]
    if kind == "bimagma":
        return [cells[..., :nn].reshape(*lead, n, n),
                cells[..., nn:2 * nn].reshape(*lead, n, n)], []
    if kind == "unary_semigroup":
        return [cells[..., :nn].reshape(*lead, n, n)], [cells[..., nn:nn + n]]
    if kind == "semigroup":
        return [cells[..., :nn].reshape(*lead, n, n)], []
    raise ValueError(f"unknown algebra kind {kind!r}")


def _relabel_cells(kind: str, cells: np.ndarray, n: int, perm) -> np.ndarray:
    # new[p[i], p[j]] = p[old[i, j]]  <=>  new[i, j] = p[old[q[i], q[j]]]
    p = np.asarray(perm, dtype=cells.dtype)
    q = np.argsort(p)
    binary, unary = _tables_of(kind, cells, n)
    parts = [p[t[..., q, :][..., :, q]].reshape(*cells.shape[:-1], n * n)
             for t in binary]
    parts += [p[u[..., q]] for u in unary]
    return np.concatenate(parts, axis=-1)


def _anti_cells(kind: str, cells: np.ndarray, n: int) -> np.ndarray:
    binary, unary = _tables_of(kind, cells, n)
    lead = cells.shape[:-1]
    flat = lambda t: np.swapaxes(t, -1, -2).reshape(*lead, n * n)
    if kind == "bimagma":
        # the reversed semigroup swaps the divisions: x\y -> y/x
        parts = [flat(binary[1]), flat(binary[0])]
    else:
        parts = [flat(binary[0])] + list(unary)
    return np.concatenate(parts, axis=-1)


def _from_cells(kind: str, cells, n: int) -> Algebra:
    cells = [int(v) for v in cells]
    if kind == "bimagma":
        return FiniteBimagma.from_cells(cells, n)
    if kind == "unary_semigroup":
        return FiniteUnarySemigroup.from_cells(cells, n)
    return FiniteSemigroup([cells[i * n:(i + 1) * n] for i in range(n)])


def relabel(A: Algebra, perm: Sequence[int]) -> Algebra:
    """Transport ``A`` along the bijection ``i -> perm[i]``."""
    if sorted(perm) != list(range(A.size)):
        raise ValueError("perm is not a permutation of the elements")
    return _from_cells(A.kind, _relabel_cells(A.kind, A.cells(), A.size, perm), A.size)


def anti(A: Algebra) -> Algebra:
    """The opposite algebra (multiplication reversed)."""
    return _from_cells(A.kind, _anti_cells(A.kind, A.cells(), A.size), A.size)


def canonical_keys(kind: str, cells: np.ndarray, n: int, anti_iso: bool = False) -> np.ndarray:
    """Lexicographically least relabeling of each row of ``cells``.

    ``cells`` has shape (M, L) in the flat layout of :meth:`cells`; the
    result is a uint8 array of the same shape.  Rows are equal iff the
    algebras are isomorphic (or anti-isomorphic, with ``anti_iso``).
    """
    cells = np.asarray(cells, dtype=np.int64)
    if cells.ndim == 1:
        cells = cells[None, :]
    sources = [cells]
    if anti_iso:
        sources.append(_anti_cells(kind, cells, n))
    best = None
    for src in sources:
        for perm in itertools.permutations(range(n)):
            cand = _relabel_cells(kind, src, n, perm).astype(np.uint8)
            if best is None:
                best = cand
                continue
            diff = cand != best
            first = diff.argmax(axis=1)
            rows = np.arange(len(cand))
            less = diff.any(axis=1) & (cand[rows, first] < best[rows, first])
            best[less] = cand[less]
    return best


@dataclass(frozen=True, order=True)
class CanonicalForm:
    kind: str
    size: int
    data: bytes = field(repr=False)

    def algebra(self) -> Algebra:
        return _from_cells(self.kind, np.frombuffer(self.data, dtype=np.uint8), self.size)


def canonical_form(A: Algebra, anti_iso: bool = False) -> CanonicalForm:
    key = canonical_keys(A.kind, A.cells(), A.size, anti_iso=anti_iso)[0]
    return CanonicalForm(A.kind, A.size, key.tobytes())


def is_isomorphic(A: Algebra, B: Algebra) -> bool:
    return A.kind == B.kind and A.size == B.size and canonical_form(A) == canonical_form(B)


# -- text format --------------------------------------------------------------

def format_algebra(A: Algebra) -> str:
    n = A.size
    rows = lambda t: [" ".join(str(v) for v in row) for row in t]
    lines = [f"{A.kind} {n}"]
    if A.kind == "bimagma":
        lines += rows(A.ld) + rows(A.rd)
    else:
        lines += rows(A.mul)
        if A.kind == "unary_semigroup":
            lines.append("inv: " + " ".join(str(v) for v in A.inv))
    return "\n".join(lines) + "\n"


def parse_algebra(text: str) -> Algebra:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise MalformedAlgebra("empty algebra file")
    head = lines[0].split()
    if len(head) != 2 or head[0] not in ("unary_semigroup", "bimagma", "semigroup"):
        raise MalformedAlgebra(f"bad header {lines[0]!r}")
    kind = head[0]
    try:
        n = int(head[1])
    except ValueError:
        raise MalformedAlgebra(f"bad size in header {lines[0]!r}") from None
    body = lines[1:]

    def table(chunk, name):
        try:
            return [[int(v) for v in line.split()] for line in chunk]
        except ValueError:
            raise MalformedAlgebra(f"non-integer entry in {name} table") from None

    if kind == "bimagma":
        if len(body) != 2 * n:
            raise MalformedAlgebra(f"expected {2 * n} table rows, got {len(body)}")
        return FiniteBimagma(table(body[:n], "ld"), table(body[n:], "rd"))
    if kind == "semigroup":
        if len(body) != n:
            raise MalformedAlgebra(f"expected {n} table rows, got {len(body)}")
        return FiniteSemigroup(table(body, "mul"))
    if len(body) != n + 1 or not body[n].startswith("inv:"):
        raise MalformedAlgebra("expected n table rows followed by an 'inv:' line")
    inv = table([body[n][4:]], "inv")[0]
    return FiniteUnarySemigroup(table(body[:n], "mul"), inv)


def read_algebra(path) -> Algebra:
    with open(path) as fh:
        return parse_algebra(fh.read())


def write_algebra(A: Algebra, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_algebra(A))
