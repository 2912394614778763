"""Compiled backtracking core for bounded model search.

A partial algebra is a flat int64 array of cells (-1 = unassigned).  Each
required identity is instantiated at every assignment of its variables;
an instance is a pair of postfix programs evaluated against the partial
cells.  After every assignment the pending instances are rescanned until
fixpoint: fully evaluated instances are dropped (or cause a conflict), and
an instance whose one side is known while the other lacks only its final
lookup forces that cell.

Program opcodes: ``op < 0`` pushes variable ``-op-1``; ``op >= 0`` applies
table ``op`` (arity 1 or 2, cell base ``tbl_base[op]``).
"""

import numpy as np
from numba import njit

SAT = 0
UNDET = 1
CONFLICT = 2
FORCE = 3


@njit(cache=True, nogil=True)
def _eval_side(prog, start, length, vals, cells, n, tbl_base, tbl_arity, stack):
    sp = 0
    pending = -1
    block = -1
    for pc in range(start, start + length):
        op = prog[pc]
        if op < 0:
            stack[sp] = vals[-op - 1]
            sp += 1
            pending = -1
            continue
        if tbl_arity[op] == 2:
            b = stack[sp - 1]
            a = stack[sp - 2]
            sp -= 2
            if a < 0 or b < 0:
                r = -1
                pending = -1
            else:
                c = tbl_base[op] + a * n + b
                r = cells[c]
                pending = c if r < 0 else -1
                if r < 0 and block < 0:
                    block = c
        else:
            a = stack[sp - 1]
            sp -= 1
            if a < 0:
                r = -1
                pending = -1
            else:
                c = tbl_base[op] + a
                r = cells[c]
                pending = c if r < 0 else -1
                if r < 0 and block < 0:
                    block = c
        stack[sp] = r
        sp += 1
    return stack[0], pending, block


@njit(cache=True, nogil=True)
def _status(inst, inst_ident, inst_vals, prog, prog_off, prog_len, cells, n,
            tbl_base, tbl_arity, stack):
    k = inst_ident[inst]
    vals = inst_vals[inst]
    v1, p1, b1 = _eval_side(prog, prog_off[2 * k], prog_len[2 * k], vals, cells, n,
                            tbl_base, tbl_arity, stack)
    v2, p2, b2 = _eval_side(prog, prog_off[2 * k + 1], prog_len[2 * k + 1], vals, cells, n,
                            tbl_base, tbl_arity, stack)
    if v1 >= 0 and v2 >= 0:
        return (SAT if v1 == v2 else CONFLICT), -1, -1
    if v1 >= 0 and p2 >= 0:
        return FORCE, p2, v1
    if v2 >= 0 and p1 >= 0:
        return FORCE, p1, v2
    if p1 >= 0 and p1 == p2:
        return SAT, -1, -1
    return UNDET, b1, b2


@njit(cache=True, nogil=True)
def _propagate(pend, npend, inst_ident, inst_vals, prog, prog_off, prog_len,
               cells, n, tbl_base, tbl_arity, stack, trail, ntrail):
    """Returns (ok, npend, ntrail)."""
    changed = True
    while changed:
        changed = False
        i = 0
        while i < npend:
            inst = pend[i]
            st, cell, val = _status(inst, inst_ident, inst_vals, prog, prog_off, prog_len,
                                    cells, n, tbl_base, tbl_arity, stack)
            if st == CONFLICT:
                return False, npend, ntrail
            if st == SAT:
                npend -= 1
                pend[i] = pend[npend]
                pend[npend] = inst
                continue
            if st == FORCE:
                cells[cell] = val
                trail[ntrail] = cell
                ntrail += 1
                changed = True
                continue
            i += 1
    return True, npend, ntrail


@njit(cache=True, nogil=True)
def _violates(finst_ident, finst_vals, prog, prog_off, prog_len, cells, n,
              tbl_base, tbl_arity, stack):
    for inst in range(len(finst_ident)):
        st, c, v = _status(inst, finst_ident, finst_vals, prog, prog_off, prog_len,
                           cells, n, tbl_base, tbl_arity, stack)
        if st == CONFLICT:
            return True
    return False


@njit(cache=True, nogil=True)
def _choose(pend, npend, inst_ident, inst_vals, prog, prog_off, prog_len, cells, n,
            tbl_base, tbl_arity, stack, order, score):
    """Unassigned cell blocking the most pending instances (ties by order)."""
    score[:] = 0
    for i in range(npend):
        st, b1, b2 = _status(pend[i], inst_ident, inst_vals, prog, prog_off, prog_len,
                             cells, n, tbl_base, tbl_arity, stack)
        if b1 >= 0:
            score[b1] += 1
        if b2 >= 0 and b2 != b1:
            score[b2] += 1
    best = -1
    for p in range(len(order)):
        c = order[p]
        if cells[c] < 0 and (best < 0 or score[c] > score[best]):
            best = c
    return best


@njit(cache=True, nogil=True)
def search(n, cells0, order, cell_i, cell_j, prog, prog_off, prog_len,
           tbl_base, tbl_arity, inst_ident, inst_vals, finst_ident, finst_vals,
           use_forbid, lnh, dynamic, split_depth, limit, out):
    """Depth-first enumeration of completions of ``cells0``.

    Writes each model (or, when ``split_depth >= 0``, each partial
    assignment reached at that decision depth) as a row of ``out``.
    Returns ``(count, complete)``; ``complete`` is False when ``out`` filled
    up or ``limit`` models were found before the tree was exhausted.
    """
    L = len(cells0)
    cells = cells0.copy()
    ninst = len(inst_ident)
    pend = np.arange(ninst)
    stack = np.empty(64, dtype=np.int64)
    trail = np.empty(L + 1, dtype=np.int64)
    count = 0
    cap = out.shape[0]

    ok, npend, ntrail = _propagate(pend, ninst, inst_ident, inst_vals, prog, prog_off,
                                   prog_len, cells, n, tbl_base, tbl_arity, stack, trail, 0)
    if not ok:
        return 0, True

    lvl_cell = np.empty(L + 1, dtype=np.int64)
    lvl_trail = np.empty(L + 1, dtype=np.int64)
    lvl_npend = np.empty(L + 1, dtype=np.int64)
    lvl_k = np.empty(L + 1, dtype=np.int64)
    lvl_ncand = np.empty(L + 1, dtype=np.int64)
    lvl_cand = np.empty((L + 1, n), dtype=np.int64)
    used = np.zeros(n, dtype=np.bool_)
    score = np.zeros(L, dtype=np.int64)

    depth = 0
    need_level = True
    while True:
        if need_level:
            need_level = False
            c = -1
            if dynamic:
                c = _choose(pend, npend, inst_ident, inst_vals, prog, prog_off, prog_len,
                            cells, n, tbl_base, tbl_arity, stack, order, score)
            else:
                for p in range(L):
                    if cells[order[p]] < 0:
                        c = order[p]
                        break
            if c < 0 or depth == split_depth:
                if c < 0 and use_forbid and not _violates(finst_ident, finst_vals, prog, prog_off,
                                                          prog_len, cells, n, tbl_base,
                                                          tbl_arity, stack):
                    pass
                else:
                    if count >= cap:
                        return count, False
                    for q in range(L):
                        out[count, q] = cells[q]
                    count += 1
                    if limit > 0 and count >= limit:
                        return count, False
                # fall through to backtracking at the current level
                if depth == 0:
                    return count, True
                depth -= 1
            else:
                lvl_cell[depth] = c
                lvl_trail[depth] = ntrail
                lvl_npend[depth] = npend
                lvl_k[depth] = 0
                nc = 0
                if lnh:
                    used[:] = False
                    for q in range(L):
                        if cells[q] >= 0:
                            used[cells[q]] = True
                            used[cell_i[q]] = True
                            if cell_j[q] >= 0:
                                used[cell_j[q]] = True
                    used[cell_i[c]] = True
                    if cell_j[c] >= 0:
                        used[cell_j[c]] = True
                    fresh = False
                    for v in range(n):
                        if used[v]:
                            lvl_cand[depth, nc] = v
                            nc += 1
                        elif not fresh:
                            fresh = True
                            lvl_cand[depth, nc] = v
                            nc += 1
                else:
                    for v in range(n):
                        lvl_cand[depth, nc] = v
                        nc += 1
                lvl_ncand[depth] = nc

        # undo to the state at entry of this level and try its next value
        while ntrail > lvl_trail[depth]:
            ntrail -= 1
            cells[trail[ntrail]] = -1
        npend = lvl_npend[depth]
        k = lvl_k[depth]
        if k >= lvl_ncand[depth]:
            if depth == 0:
                return count, True
            depth -= 1
            continue
        lvl_k[depth] = k + 1
        c = lvl_cell[depth]
        cells[c] = lvl_cand[depth, k]
        trail[ntrail] = c
        ntrail += 1
        ok, npend, ntrail = _propagate(pend, npend, inst_ident, inst_vals, prog, prog_off,
                                       prog_len, cells, n, tbl_base, tbl_arity, stack,
                                       trail, ntrail)
        if ok:
            depth += 1
            need_level = True
