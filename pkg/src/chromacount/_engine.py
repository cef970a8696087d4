"""Numba kernels behind counting and exact list-color-function search.

The kernels work on color bitmasks packed in int64, so they require every
color index < 64.  Callers fall back to pure-Python paths otherwise; the
two paths are equivalence-tested in the suite.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np
from numba import njit

from .graph import Graph
from .counting import ListAssignment, counting_order

NO_CAP = 1 << 62

STATUS_EXACT = 0
STATUS_BUDGET = 1


class EngineInfeasible(Exception):
    """The jitted kernel cannot represent this instance; use a fallback."""


# ---------------------------------------------------------------------------
# capped counting
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _count_capped(nbr_flat, nbr_off, masks, cap):  # pragma: no cover - jitted
    n = masks.shape[0]
    cand = np.zeros(n, np.int64)
    chosen = np.zeros(n, np.int64)
    count = 0
    d = 0
    cand[0] = masks[0]
    while d >= 0:
        mk = cand[d]
        if mk == 0:
            d -= 1
            continue
        low = mk & -mk
        cand[d] = mk ^ low
        chosen[d] = low
        if d == n - 1:
            count += 1
            if count >= cap:
                return count
        else:
            nxt = d + 1
            forb = 0
            for t in range(nbr_off[nxt], nbr_off[nxt + 1]):
                forb |= chosen[nbr_flat[t]]
            cand[nxt] = masks[nxt] & ~forb
            d += 1
    return count


@lru_cache(maxsize=256)
def _count_context(g: Graph):
    order = counting_order(g)
    pos_of = {v: i for i, v in enumerate(order)}
    flat = []
    off = [0]
    for i, v in enumerate(order):
        flat.extend(sorted(pos_of[w] for w in g.neighbors(v) if pos_of[w] < i))
        off.append(len(flat))
    return (order,
            np.array(flat or [0], dtype=np.int64),
            np.array(off, dtype=np.int64))


def count_kernel(g: Graph, L: ListAssignment, cap=None) -> int:
    order, nbr_flat, nbr_off = _count_context(g)
    masks = np.array([L.masks[v] for v in order], dtype=np.int64)
    return int(_count_capped(nbr_flat, nbr_off, masks,
                             np.int64(cap if cap is not None else NO_CAP)))


# ---------------------------------------------------------------------------
# canonical m-assignment enumeration tables
# ---------------------------------------------------------------------------

def canonical_choices(u: int, m: int):
    """All canonical lists for the next vertex when colors 0..u-1 have
    appeared: (m-j)-subsets of the old colors plus the next j fresh ones,
    for j = 0..m, in deterministic order."""
    out = []
    fresh_all = list(range(u, u + m))
    for j in range(m + 1):
        fresh = fresh_all[:j]
        fresh_mask = sum(1 << c for c in fresh)
        for old in combinations(range(u), m - j):
            out.append((sum(1 << c for c in old) | fresh_mask, j,
                        tuple(old) + tuple(fresh)))
    return out


def canonical_choice_count(u: int, m: int) -> int:
    return sum(comb(u, m - j) for j in range(m + 1))


@lru_cache(maxsize=None)
def canonical_assignment_count(n: int, m: int) -> int:
    """Number of leaves the canonical enumeration visits (first list is
    forced to {0..m-1})."""

    @lru_cache(maxsize=None)
    def rec(remaining: int, u: int) -> int:
        if remaining == 0:
            return 1
        return sum(comb(u, m - j) * rec(remaining - 1, u + j)
                   for j in range(m + 1))

    return rec(n, 0)


@lru_cache(maxsize=32)
def _choice_tables(m: int, umax: int):
    total = sum(canonical_choice_count(u, m) for u in range(umax + 1))
    if total > 4_000_000:
        raise EngineInfeasible(f"choice table would hold {total} entries")
    masks = np.zeros(total, dtype=np.int64)
    colors = np.zeros((total, m), dtype=np.int64)
    fresh = np.zeros(total, dtype=np.int64)
    off = np.zeros(umax + 2, dtype=np.int64)
    idx = 0
    for u in range(umax + 1):
        off[u] = idx
        for mask, j, cols in canonical_choices(u, m):
            masks[idx] = mask
            fresh[idx] = j
            for t, c in enumerate(cols):
                colors[idx, t] = c
            idx += 1
    off[umax + 1] = idx
    return masks, colors, fresh, off


# ---------------------------------------------------------------------------
# exact minimizer over canonical m-assignments
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _minimize_kernel(n, m, nbr_flat, nbr_off, ch_masks, ch_colors, ch_fresh,
                     ch_off, maxcols, budget, top_lo, top_hi,
                     witness_out):  # pragma: no cover - jitted
    col_buf = np.zeros((n + 1, maxcols), np.int64)
    col_len = np.zeros(n + 1, np.int64)
    ptr = np.zeros(n + 1, np.int64)
    endp = np.zeros(n + 1, np.int64)
    ustack = np.zeros(n + 1, np.int64)
    stackmask = np.zeros(n + 1, np.int64)
    stackfresh = np.zeros(n + 1, np.int64)

    col_len[0] = 1
    col_buf[0, 0] = 0
    ustack[0] = 0
    ptr[0] = ch_off[0]
    endp[0] = ch_off[1]
    best = np.int64(NO_CAP)
    leaves = np.int64(0)
    status = STATUS_EXACT
    d = 0
    while d >= 0:
        if ptr[d] >= endp[d]:
            d -= 1
            continue
        idx = ptr[d]
        ptr[d] += 1
        mask = ch_masks[idx]
        stackmask[d] = mask
        stackfresh[d] = ch_fresh[idx]
        plen = col_len[d]
        q = 0
        for t in range(plen):
            col = col_buf[d, t]
            for j in range(m):
                c = ch_colors[idx, j]
                ok = True
                for s in range(nbr_off[d], nbr_off[d + 1]):
                    w = nbr_flat[s]
                    if (col >> (6 * w)) & 63 == c:
                        ok = False
                        break
                if ok:
                    col_buf[d + 1, q] = col | (c << (6 * d))
                    q += 1
        col_len[d + 1] = q
        if q == 0:
            # no prefix coloring survives: every completion counts zero
            best = 0
            for i in range(d + 1):
                witness_out[i] = stackmask[i]
            u = ustack[d] + ch_fresh[idx]
            for i in range(d + 1, n):
                witness_out[i] = ((1 << m) - 1) << u
                u += m
            return best, leaves, STATUS_EXACT
        if d == n - 1:
            leaves += 1
            if q < best:
                best = q
                for i in range(n):
                    witness_out[i] = stackmask[i]
            if leaves >= budget:
                return best, leaves, STATUS_BUDGET
        else:
            u = ustack[d] + ch_fresh[idx]
            ustack[d + 1] = u
            lo = ch_off[u]
            hi = ch_off[u + 1]
            if d == 0:
                # work partition hook: restrict the first free level
                lo2 = lo + top_lo
                hi2 = lo + top_hi
                if hi2 < hi:
                    hi = hi2
                lo = lo2
            ptr[d + 1] = lo
            endp[d + 1] = hi
            d += 1
    return best, leaves, status


def _minimizer_inputs(g: Graph, m: int):
    n = g.n
    if m * n > 63:
        raise EngineInfeasible("color universe exceeds 63 colors")
    if 6 * n > 60:
        raise EngineInfeasible("too many vertices for packed colorings")
    maxcols = m ** n
    if maxcols > 1 << 22:
        raise EngineInfeasible("prefix coloring buffer too large")
    flat = []
    off = [0]
    for v in range(n):
        flat.extend(sorted(w for w in g.neighbors(v) if w < v))
        off.append(len(flat))
    nbr_flat = np.array(flat or [0], dtype=np.int64)
    nbr_off = np.array(off, dtype=np.int64)
    tables = _choice_tables(m, m * n)
    return n, maxcols, nbr_flat, nbr_off, tables


def minimize_exact(g: Graph, m: int, budget: int, threads: int = 1):
    """Exact min of P(G,L) over canonical m-assignments.

    Returns (best, witness_masks, leaves, exhausted) where ``exhausted``
    is False when the search finished and True when the leaf budget ran
    out (best is then only an upper bound).
    """
    n, maxcols, nbr_flat, nbr_off, tables = _minimizer_inputs(g, m)
    ch_masks, ch_colors, ch_fresh, ch_off = tables
    if n == 1:
        return m, ((1 << m) - 1,), 1, False
    top_n = canonical_choice_count(m, m)  # vertex 0 forces u = m at level 1

    def run(lo, hi):
        wit = np.zeros(n, dtype=np.int64)
        best, leaves, status = _minimize_kernel(
            n, m, nbr_flat, nbr_off, ch_masks, ch_colors, ch_fresh, ch_off,
            np.int64(maxcols), np.int64(budget), np.int64(lo), np.int64(hi),
            wit)
        return int(best), wit, int(leaves), int(status)

    if threads <= 1 or top_n < 2:
        best, wit, leaves, status = run(0, top_n)
    else:
        threads = min(threads, top_n)
        bounds = [(i * top_n // threads, (i + 1) * top_n // threads)
                  for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda b: run(*b), bounds))
        leaves = sum(r[2] for r in results)
        status = max(r[3] for r in results)
        best = min(r[0] for r in results)
        wit = next(r[1] for r in results if r[0] == best)
    witness = tuple(int(x) for x in wit)
    return best, witness, leaves, status == STATUS_BUDGET
