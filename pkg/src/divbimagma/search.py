"""Bounded exhaustive model search under identity constraints.

Tables are filled cell by cell; each required identity is checked on every
ground instance as soon as it is fully determined, and an instance with one
known side and one missing final lookup fills that lookup in directly.
Associativity is always required for (unary) semigroups.  With symmetry
breaking on, a cell only tries the elements already mentioned plus one
fresh element, so every isomorphism class is still reached.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernel
from .algebra import _from_cells, canonical_keys
from .registry import Registry, default_registry, resolve
from .terms import PRIME_FORMS, Identity, Inv, Ld, Mul, Rd, Var, expand_for

__all__ = [
    "KINDS", "BoundExceeded", "SearchSpec", "SearchResult",
    "enumerate_models", "find_witness", "find_witnesses", "count_models",
    "labeled_count", "raw_models", "cell_order", "DEFAULT_BOUNDS",
]

KINDS = ("bimagma", "unary_semigroup", "semigroup")

DEFAULT_BOUNDS = {"unary_semigroup": 4, "semigroup": 4, "bimagma": 5}

_TABLES = {
    "bimagma": {Ld: 0, Rd: 1},
    "unary_semigroup": {Mul: 0, Inv: 1},
    "semigroup": {Mul: 0},
}


class BoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class SearchSpec:
    kind: str
    size: int
    require: tuple = ()
    forbid: object = None
    dedup: str = "iso"
    prime: str = "left"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.dedup not in ("none", "iso", "iso+anti-iso"):
            raise ValueError(f"unknown dedup mode {self.dedup!r}")
        if self.prime not in PRIME_FORMS:
            raise ValueError(f"unknown expansion of ' {self.prime!r}")
        if self.size < 1:
            raise ValueError("size must be positive")
        object.__setattr__(self, "require", tuple(self.require))


@dataclass
class SearchResult:
    spec: SearchSpec
    models: list
    count_raw: int
    exhausted: bool
    keys: list = field(default_factory=list, repr=False)


def _layout(kind: str, n: int):
    nn = n * n
    if kind == "bimagma":
        L = 2 * nn
        cell_i = np.array([(c % nn) // n for c in range(L)], dtype=np.int64)
        cell_j = np.array([c % n for c in range(L)], dtype=np.int64)
        base, arity = [0, nn], [2, 2]
    elif kind == "unary_semigroup":
        L = nn + n
        cell_i = np.array([c // n for c in range(nn)] + list(range(n)), dtype=np.int64)
        cell_j = np.array([c % n for c in range(nn)] + [-1] * n, dtype=np.int64)
        base, arity = [0, nn], [2, 1]
    else:
        L = nn
        cell_i = np.array([c // n for c in range(nn)], dtype=np.int64)
        cell_j = np.array([c % n for c in range(nn)], dtype=np.int64)
        base, arity = [0], [2]
    return L, cell_i, cell_j, np.array(base, dtype=np.int64), np.array(arity, dtype=np.int64)


def cell_order(kind: str, n: int, strategy: str = "rows") -> np.ndarray:
    """Decision order over cells.

    ``rows`` fills the first table row by row, then the second;
    ``diagonal`` fills both tables over growing blocks ``max(i, j) = k``.
    """
    L, cell_i, cell_j, _, _ = _layout(kind, n)
    if strategy == "rows":
        return np.arange(L, dtype=np.int64)
    if strategy == "diagonal":
        key = lambda c: (max(cell_i[c], cell_j[c]), c)
        return np.array(sorted(range(L), key=key), dtype=np.int64)
    raise ValueError(f"unknown cell order {strategy!r}")


def _postfix(t, table_of, var_index, out):
    if isinstance(t, Var):
        out.append(-(var_index[t.name] + 1))
    elif isinstance(t, Inv):
        _postfix(t.arg, table_of, var_index, out)
        out.append(table_of[Inv])
    else:
        _postfix(t.left, table_of, var_index, out)
        _postfix(t.right, table_of, var_index, out)
        out.append(table_of[type(t)])


class _Compiled:
    """Programs and ground instances for one (kind, size, identities) triple."""

    def __init__(self, kind: str, n: int, require: list[Identity], forbid: Identity | None,
                 prime: str = "left"):
        self.kind, self.n = kind, n
        table_of = _TABLES[kind]
        idents = list(require)
        if kind != "bimagma":
            idents.insert(0, default_registry()["assoc"])
        all_idents = idents + ([forbid] if forbid is not None else [])
        prog, off, length = [], [], []
        for ident in all_idents:
            names = ident.variables
            index = {v: i for i, v in enumerate(names)}
            for side in (ident.lhs, ident.rhs):
                code: list[int] = []
                _postfix(expand_for(side, kind, prime), table_of, index, code)
                off.append(len(prog))
                length.append(len(code))
                prog.extend(code)
        self.prog = np.array(prog, dtype=np.int64)
        self.prog_off = np.array(off, dtype=np.int64)
        self.prog_len = np.array(length, dtype=np.int64)
        width = max([len(i.variables) for i in all_idents] + [1])
        self.inst_ident, self.inst_vals = self._instances(idents, 0, width)
        if forbid is not None:
            self.finst_ident, self.finst_vals = self._instances([forbid], len(idents), width)
        else:
            self.finst_ident = np.zeros(0, dtype=np.int64)
            self.finst_vals = np.zeros((0, width), dtype=np.int64)
        self.use_forbid = forbid is not None
        (self.L, self.cell_i, self.cell_j,
         self.tbl_base, self.tbl_arity) = _layout(kind, n)

    def _instances(self, idents, first, width):
        rows_id, rows_val = [], []
        for k, ident in enumerate(idents):
            nv = len(ident.variables)
            for vals in itertools.product(range(self.n), repeat=nv):
                rows_id.append(first + k)
                rows_val.append(list(vals) + [0] * (width - nv))
        return (np.array(rows_id, dtype=np.int64),
                np.array(rows_val, dtype=np.int64).reshape(len(rows_id), width))

    def run(self, cells0, order, lnh=True, dynamic=True, split_depth=-1, limit=0,
            capacity=1 << 16, max_capacity=1 << 24):
        while True:
            out = np.empty((capacity, self.L), dtype=np.int8)
            count, complete = _kernel.search(
                self.n, cells0, order, self.cell_i, self.cell_j, self.prog, self.prog_off,
                self.prog_len, self.tbl_base, self.tbl_arity, self.inst_ident, self.inst_vals,
                self.finst_ident, self.finst_vals, self.use_forbid, lnh, dynamic, split_depth,
                limit, out)
            if complete or (limit > 0 and count >= limit) or count < capacity:
                return out[:count].astype(np.int64), complete
            if capacity >= max_capacity:
                raise BoundExceeded(f"more than {capacity} raw models; add constraints or dedup")
            capacity *= 4


def _check_bound(kind: str, n: int, bound: int | None):
    bound = DEFAULT_BOUNDS[kind] if bound is None else bound
    if n > bound:
        raise BoundExceeded(f"size {n} exceeds the configured bound {bound} for {kind}")


def raw_models(kind: str, n: int, require=(), forbid=None, *, registry: Registry | None = None,
               symmetry_breaking: bool = True, order: str = "rows", workers: int = 1,
               limit: int = 0, prime: str = "left") -> tuple[np.ndarray, bool]:
    """Flat cell arrays of every model found, before any dedup."""
    reg = registry or default_registry()
    req = resolve(require, reg)
    forb = resolve([forbid], reg)[0] if forbid is not None else None
    comp = _Compiled(kind, n, req, forb, prime)
    orders = cell_order(kind, n, order)
    cells0 = np.full(comp.L, -1, dtype=np.int64)
    if workers <= 1 or limit:
        return comp.run(cells0, orders, lnh=symmetry_breaking, limit=limit)
    # split on the first decisions until there are enough independent parts
    depth = 1
    while n ** depth < 4 * workers and depth < comp.L:
        depth += 1
    parts, _ = comp.run(cells0, orders, lnh=symmetry_breaking, split_depth=depth)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda p: comp.run(p.copy(), orders, lnh=symmetry_breaking),
                                parts))
    if not results:
        return np.zeros((0, comp.L), dtype=np.int64), True
    merged = np.concatenate([r[0] for r in results] + [np.zeros((0, comp.L), dtype=np.int64)])
    return merged, all(r[1] for r in results)


def _dedup(kind: str, n: int, cells: np.ndarray, dedup: str):
    if dedup == "none":
        keys = cells.astype(np.uint8)
    else:
        keys = canonical_keys(kind, cells, n, anti_iso=(dedup == "iso+anti-iso"))
    if not len(keys):
        return [], []
    uniq = np.unique(keys, axis=0)          # sorted lexicographically
    return [_from_cells(kind, row, n) for row in uniq], [row.tobytes() for row in uniq]


def enumerate_models(spec: SearchSpec, *, registry: Registry | None = None, bound: int | None = None,
                     symmetry_breaking: bool | None = None, order: str = "rows",
                     workers: int = 1) -> SearchResult:
    """All models of ``spec.require`` (violating ``spec.forbid``) of the given size.

    Models are canonical representatives sorted by canonical key, so the
    output is deterministic.  Symmetry breaking defaults to on unless
    ``dedup='none'`` asks for every labeled model.
    """
    _check_bound(spec.kind, spec.size, bound)
    if symmetry_breaking is None:
        symmetry_breaking = spec.dedup != "none"
    if spec.dedup == "none" and symmetry_breaking:
        raise ValueError("symmetry breaking would drop labeled models with dedup='none'")
    cells, exhausted = raw_models(spec.kind, spec.size, spec.require, spec.forbid,
                                  registry=registry, symmetry_breaking=symmetry_breaking,
                                  order=order, workers=workers, prime=spec.prime)
    models, keys = _dedup(spec.kind, spec.size, cells, spec.dedup)
    return SearchResult(spec, models, len(cells), exhausted, keys)


def find_witnesses(spec: SearchSpec, **kw) -> SearchResult:
    if spec.forbid is None:
        raise ValueError("a witness search needs a forbidden identity")
    return enumerate_models(spec, **kw)


def find_witness(spec: SearchSpec, *, registry: Registry | None = None, bound: int | None = None,
                 order: str = "rows"):
    """First model satisfying ``require`` but not ``forbid``, or None."""
    if spec.forbid is None:
        raise ValueError("a witness search needs a forbidden identity")
    _check_bound(spec.kind, spec.size, bound)
    cells, _ = raw_models(spec.kind, spec.size, spec.require, spec.forbid, registry=registry,
                          order=order, limit=1, prime=spec.prime)
    if not len(cells):
        return None
    return _from_cells(spec.kind, cells[0], spec.size)


def count_models(kind: str, n: int, dedup: str = "iso", require=(), *, bound: int | None = None,
                 workers: int = 1) -> int:
    spec = SearchSpec(kind, n, tuple(require), None, dedup)
    return len(enumerate_models(spec, bound=bound, workers=workers).models)


def labeled_count(kind: str, n: int, require=()) -> int:
    """Number of labeled models, without symmetry breaking."""
    cells, _ = raw_models(kind, n, require, symmetry_breaking=False)
    return len(cells)
