"""Brute-force reference enumerator.

Shares nothing with the search kernel: every table in the product space is
generated, every ground instance of every identity is evaluated on whole
batches of candidate tables with numpy, and isomorphism classes come from
a plain Python minimum over all relabelings.  Slow on purpose; used as an
oracle for the pruned search.
"""

from __future__ import annotations

import itertools

import numpy as np

from .registry import Registry, default_registry, resolve
from .terms import Inv, Ld, Mul, Rd, Var

__all__ = ["naive_models", "naive_classes", "naive_canonical", "naive_semigroup_count"]


def _tables(kind, n):
    """Names and shapes of the tables of an algebra of ``kind``."""
    if kind == "bimagma":
        return [("ld", (n, n)), ("rd", (n, n))]
    if kind == "unary_semigroup":
        return [("mul", (n, n)), ("inv", (n,))]
    return [("mul", (n, n))]


def _ev(t, T, env, kind, rows, prime):
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Inv):
        a = _ev(t.arg, T, env, kind, rows, prime)
        if kind == "bimagma":
            if prime == "right":
                return T["ld"][rows, a, T["rd"][rows, a, a]]
            return T["rd"][rows, T["ld"][rows, a, a], a]
        return T["inv"][rows, a]
    a = _ev(t.left, T, env, kind, rows, prime)
    b = _ev(t.right, T, env, kind, rows, prime)
    if kind == "bimagma":
        if isinstance(t, Mul):
            raise TypeError("no product on a bimagma")
        return T["ld" if isinstance(t, Ld) else "rd"][rows, a, b]
    if isinstance(t, Ld):
        a = T["inv"][rows, a]
    elif isinstance(t, Rd):
        b = T["inv"][rows, b]
    return T["mul"][rows, a, b]


def _filter(ident, cells, kind, n, prime, keep_if=True):
    """Rows of ``cells`` on which ``ident`` holds (or fails, with keep_if=False).

    Survivors are compressed after every ground instance, so the batch
    shrinks as fast as the identity rules tables out.
    """
    names = ident.variables
    if not keep_if:
        bad = np.zeros(len(cells), dtype=bool)
    for vals in itertools.product(range(n), repeat=len(names)):
        if not len(cells):
            break
        T, rows = _split(cells, kind, n), np.arange(len(cells))
        env = {v: np.full(len(cells), x) for v, x in zip(names, vals)}
        eq = _ev(ident.lhs, T, env, kind, rows, prime) == _ev(ident.rhs, T, env, kind, rows, prime)
        if keep_if:
            cells = cells[eq]
        else:
            bad |= ~eq
    return cells if keep_if else cells[bad]


def _split(cells, kind, n):
    T, pos = {}, 0
    for name, shape in _tables(kind, n):
        size = int(np.prod(shape))
        T[name] = cells[:, pos:pos + size].reshape((len(cells),) + shape)
        pos += size
    return T


def naive_models(kind: str, n: int, require=(), forbid=None, *, registry: Registry | None = None,
                 prime: str = "left", chunk: int = 1 << 16) -> np.ndarray:
    """Every labeled model, as rows of flat cells (tables in order, row-major)."""
    reg = registry or default_registry()
    idents = resolve(require, reg)
    if kind != "bimagma":
        idents = resolve(["assoc"], reg) + idents
    forb = resolve([forbid], reg)[0] if forbid is not None else None
    L = sum(int(np.prod(s)) for _, s in _tables(kind, n))
    # the leading cells vary in the outer loop, the rest form one batch
    inner = min(L, max(1, int(np.floor(np.log(chunk) / np.log(n))) if n > 1 else L))
    outer = L - inner
    tail = np.array(list(itertools.product(range(n), repeat=inner)), dtype=np.int64).reshape(-1, inner)
    found = []
    for head in itertools.product(range(n), repeat=outer):
        cells = np.hstack([np.tile(np.array(head, dtype=np.int64), (len(tail), 1)), tail])
        for ident in idents:
            cells = _filter(ident, cells, kind, n, prime)
        if forb is not None:
            cells = _filter(forb, cells, kind, n, prime, keep_if=False)
        if len(cells):
            found.append(cells)
    if not found:
        return np.zeros((0, L), dtype=np.int64)
    return np.concatenate(found)


def naive_canonical(cells, kind: str, n: int, anti_iso: bool = False) -> tuple:
    """Least relabeled cell tuple, by direct substitution over every permutation."""
    cells = [int(v) for v in cells]
    shapes = _tables(kind, n)
    variants = [cells]
    if anti_iso:
        if kind == "bimagma":
            ld, rd = cells[:n * n], cells[n * n:]
            # opposite bimagma: x\y becomes y/x and x/y becomes y\x
            variants.append([rd[j * n + i] for i in range(n) for j in range(n)]
                            + [ld[j * n + i] for i in range(n) for j in range(n)])
        else:
            mul = cells[:n * n]
            variants.append([mul[j * n + i] for i in range(n) for j in range(n)] + cells[n * n:])
    best = None
    for p in itertools.permutations(range(n)):
        q = [0] * n
        for i, v in enumerate(p):
            q[v] = i
        for var in variants:
            out, pos = [], 0
            for _, shape in shapes:
                if len(shape) == 2:
                    out += [p[var[pos + q[i] * n + q[j]]] for i in range(n) for j in range(n)]
                    pos += n * n
                else:
                    out += [p[var[pos + q[i]]] for i in range(n)]
                    pos += n
            t = tuple(out)
            if best is None or t < best:
                best = t
    return best


def naive_classes(kind: str, n: int, require=(), forbid=None, *, anti_iso: bool = False,
                  **kw) -> set:
    return {naive_canonical(row, kind, n, anti_iso)
            for row in naive_models(kind, n, require, forbid, **kw)}


def naive_semigroup_count(n: int, dedup: str = "iso") -> int:
    """Semigroups of order ``n``, by a pure Python associativity scan."""
    tables = []
    for flat in itertools.product(range(n), repeat=n * n):
        m = lambda a, b: flat[a * n + b]
        if all(m(m(a, b), c) == m(a, m(b, c))
               for a in range(n) for b in range(n) for c in range(n)):
            tables.append(flat)
    if dedup == "none":
        return len(tables)
    return len({naive_canonical(t, "semigroup", n, dedup == "iso+anti-iso") for t in tables})
