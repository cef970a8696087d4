"""DP-covers (correspondence coloring), independent-transversal counting,
the DP color function by normalized cover enumeration, and the known
closed form for Theta(2,2,2k).

A cover assigns each edge (u,v), u < v, a permutation sigma of {0..m-1}:
cover-vertex (u,c) conflicts with (v, sigma(c)).  An optional per-edge
mask restricts the matching to a subset of domain colors, which is how a
cover imported from a list assignment keeps its missing cross-edges.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Optional

from .counting import ListAssignment, counting_order
from .graph import Graph, bits


class CoverError(ValueError):
    pass


@dataclass(frozen=True)
class Cover:
    """m-fold cover: per-edge permutations with optional partial masks."""

    m: int
    perms: dict  # (u, v) with u < v -> tuple permutation of range(m)
    masks: dict = field(default_factory=dict)  # (u, v) -> domain bitmask

    def __post_init__(self):
        full = (1 << self.m) - 1
        for e, p in self.perms.items():
            if sorted(p) != list(range(self.m)):
                raise CoverError(f"edge {e}: not a permutation of [{self.m}]")
        for e, msk in self.masks.items():
            if e not in self.perms:
                raise CoverError(f"mask for non-edge {e}")
            if msk & ~full:
                raise CoverError(f"mask for {e} outside color range")

    def mask_of(self, e) -> int:
        return self.masks.get(e, (1 << self.m) - 1)

    @property
    def is_full(self) -> bool:
        full = (1 << self.m) - 1
        return all(self.mask_of(e) == full for e in self.perms)


def identity_cover(g: Graph, m: int) -> Cover:
    """The cover corresponding to constant lists: identity on every edge."""
    ident = tuple(range(m))
    return Cover(m, {e: ident for e in g.edges()})


def count_dp_colorings(g: Graph, cover: Cover, cap: Optional[int] = None) -> int:
    """Number of independent transversals: one cover-vertex per base
    vertex, never both ends of a matching edge."""
    if set(cover.perms) != set(g.edges()):
        raise CoverError("cover must define every edge of the graph")
    m = cover.m
    order = counting_order(g)
    pos_of = {v: i for i, v in enumerate(order)}
    # forbid[i] maps an earlier position j (adjacent to order[i]) to a
    # length-m tuple: chosen color at j -> forbidden color at i (or -1)
    forbid: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in order]
    for (u, v) in g.edges():
        sigma = cover.perms[(u, v)]
        mask = cover.mask_of((u, v))
        iu, iv = pos_of[u], pos_of[v]
        if iu < iv:
            table = tuple(sigma[c] if mask >> c & 1 else -1 for c in range(m))
            forbid[iv].append((iu, table))
        else:
            inv = [-1] * m
            for c in range(m):
                if mask >> c & 1:
                    inv[sigma[c]] = c
            forbid[iu].append((iv, tuple(inv)))
    n = g.n
    chosen = [0] * n
    limit = cap if cap is not None else float("inf")
    count = 0

    def descend(i: int) -> bool:
        nonlocal count
        avail = (1 << m) - 1
        for j, table in forbid[i]:
            banned = table[chosen[j]]
            if banned >= 0:
                avail &= ~(1 << banned)
        for c in bits(avail):
            chosen[i] = c
            if i == n - 1:
                count += 1
                if count >= limit:
                    return True
            elif descend(i + 1):
                return True
        return False

    if n > 0:
        descend(0)
    return count


@dataclass
class CoverSearchReport:
    lo: int
    hi: int
    status: str  # exact | budget-exhausted
    witness: Optional[Cover]
    stats: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"no exact value (status={self.status})")
        return self.hi


def spanning_tree_edges(g: Graph) -> list[tuple[int, int]]:
    """BFS tree from vertex 0 (deterministic)."""
    seen = 1
    frontier = [0]
    tree = []
    while frontier:
        nxt = []
        for v in frontier:
            for w in bits(g.adj[v] & ~seen):
                seen |= 1 << w
                tree.append((min(v, w), max(v, w)))
                nxt.append(w)
        frontier = nxt
    return tree


def dp_color_function(g: Graph, m: int,
                      budget: Optional[int] = None) -> CoverSearchReport:
    """P_DP(G,m): minimum transversal count over m-fold covers.

    Enumeration is normalized to the identity permutation on a BFS
    spanning tree (relabeling each fiber independently composes adjacent
    permutations, which is count-preserving), and restricted to full
    covers (deleting cover edges never decreases the transversal count).
    """
    if not g.is_connected():
        raise ValueError("cover normalization assumes a connected graph")
    if m < 1:
        raise ValueError("fold size must be >= 1")
    t0 = time.perf_counter()
    tree = set(spanning_tree_edges(g))
    cotree = sorted(e for e in g.edges() if e not in tree)
    ident = tuple(range(m))
    total = 1
    fact = math.factorial(m)
    for _ in cotree:
        total *= fact
    best = None
    witness = None
    evaluated = 0
    exhausted = False
    for combo in product(sorted(permutations(range(m))), repeat=len(cotree)):
        perms = {e: ident for e in tree}
        perms.update(dict(zip(cotree, combo)))
        cover = Cover(m, perms)
        c = count_dp_colorings(g, cover, cap=best)
        evaluated += 1
        if best is None or c < best:
            best, witness = c, cover
        if best == 0:
            break
        if budget is not None and evaluated >= budget and evaluated < total:
            exhausted = True
            break
    stats = {"covers": evaluated, "cotree_edges": len(cotree),
             "wall_s": time.perf_counter() - t0}
    if exhausted:
        return CoverSearchReport(0, best, "budget-exhausted", witness, stats)
    return CoverSearchReport(best, best, "exact", witness, stats)


def theta_dp_formula(k: int, m: int) -> int:
    """Closed form for P_DP(Theta(2,2,2k), m), cross-checked against
    cover enumeration in the suite."""
    if k < 2 or m < 2:
        raise ValueError("formula regime is k >= 2, m >= 2")
    q = m - 1
    num = q ** (2 * k + 4) - q ** (2 * k) - 2 * q ** 2 + 2
    if num % m:
        raise AssertionError(f"theta DP numerator {num} not divisible by {m}")
    return num // m


def cover_from_list_assignment(g: Graph, L: ListAssignment) -> Cover:
    """The cover of G corresponding to L: (u,c) -- (v,c) for shared colors,
    expressed in per-vertex local color indices (rank within the sorted
    list).  Unmatched permutation entries are filled by the
    lowest-available-index rule and masked out."""
    m = L.uniform_size
    if m is None:
        raise CoverError("list sizes are not uniform: no single fold size")
    ranks = [sorted(L.list_of(v)) for v in range(g.n)]
    perms = {}
    masks = {}
    for (u, v) in g.edges():
        sigma = [-1] * m
        mask = 0
        for i, c in enumerate(ranks[u]):
            if c in ranks[v]:
                sigma[i] = ranks[v].index(c)
                mask |= 1 << i
        taken = set(s for s in sigma if s >= 0)
        free = [j for j in range(m) if j not in taken]
        for i in range(m):
            if sigma[i] < 0:
                sigma[i] = free.pop(0)
        perms[(u, v)] = tuple(sigma)
        masks[(u, v)] = mask
    return Cover(m, perms, masks)


def complete_cover(cover: Cover) -> Cover:
    """Extend partial matchings to the full permutations (never increases
    the transversal count)."""
    return Cover(cover.m, dict(cover.perms))
