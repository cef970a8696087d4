"""Hand-constructed list assignments with provably few colorings, the
three-path decomposition of theta-graph counts, and a validator suite of
numeric identities and inequalities checked on seeded random instances.

All comparisons are exact integer arithmetic; fractional bounds are
cross-multiplied or restated as integer-power inequalities first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .graph import (Graph, add_pendant, build_family_text, build_theta,
                    core_class, from_edges, induced_subgraph,
                    leaf_deletion_order, theta_paths)
from .counting import (ListAssignment, count_list_colorings,
                       count_proper_colorings, theta222k_poly)
from .dp import theta_dp_formula


class HypothesisError(ValueError):
    """The instance does not satisfy the claim's hypotheses."""


# ---------------------------------------------------------------------------
# constructed assignments
# ---------------------------------------------------------------------------

def theta_witness_assignment(k: int) -> ListAssignment:
    """The 2-assignment of Theta(2,2,2k) (canonical vertex order) with
    exactly one proper coloring."""
    if k < 2:
        raise ValueError("construction needs k >= 2")
    zmid = 2 * k - 3  # z_2 .. z_{2k-2}
    sets = ([{1, 3}, {1, 2}, {2, 3}, {1, 3}]
            + [{2, 3}] * zmid
            + [{1, 2}, {1, 2}])
    return ListAssignment.from_sets(sets)


def k224_witness() -> tuple[Graph, ListAssignment]:
    """K_{2,2,4} (parts X = {0,1}, Y = {2,3}, Z = {4..7}) with the
    3-assignment whose only 4 proper colorings all give Z color 1."""
    g = build_family_text("multipartite:2,2,4")
    L = ListAssignment.from_sets([
        {1, 2, 3}, {1, 4, 5},
        {1, 2, 3}, {1, 4, 5},
        {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5},
    ])
    return g, L


def pendant_extension_witness(g: Graph,
                              core_assignment: Optional[ListAssignment] = None
                              ) -> ListAssignment:
    """Unique-coloring 2-assignment for a graph whose core is
    Theta(2,2,2k), k >= 2.

    The core gets ``core_assignment`` (by default the theta construction
    mapped through the path structure); each deleted pendant vertex then
    copies the list of its neighbor, in reverse deletion order, which
    preserves the coloring count.
    """
    deletions, core_verts = leaf_deletion_order(g)
    core, remap = induced_subgraph(g, core_verts)
    paths = theta_paths(core)
    if paths is None:
        raise HypothesisError("core is not a three-path theta graph")
    lens = [len(p) - 1 for p in paths]
    if lens[:2] != [2, 2] or lens[2] % 2 or lens[2] < 4:
        raise HypothesisError(f"core is Theta{tuple(lens)}, need Theta(2,2,2k), k >= 2")
    k = lens[2] // 2
    if core_assignment is None:
        core_assignment = theta_witness_assignment(k)
    if core_assignment.n != core.n:
        raise HypothesisError("core assignment size does not match the core")
    # canonical theta order: u, x1, y1, z1..z_{2k-1}, v
    u = paths[0][0]
    v = paths[0][-1]
    order = [u, paths[0][1], paths[1][1]] + paths[2][1:-1] + [v]
    inv = {new: old for old, new in remap.items()}
    masks = [0] * g.n
    for i, cv in enumerate(order):
        masks[inv[cv]] = core_assignment.masks[i]
    for leaf, nbr in reversed(deletions):
        masks[leaf] = masks[nbr]
    return ListAssignment(tuple(masks))


# ---------------------------------------------------------------------------
# three-path decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThetaDecomposition:
    """Branch-vertex pair (u, v), the three u-v paths, and for each
    endpoint color pair (c, d) the per-path pinned-endpoint counts."""

    u: int
    v: int
    paths: tuple[tuple[int, ...], ...]
    tables: dict  # (c, d) -> tuple of per-path counts

    @property
    def total(self) -> int:
        return sum(n1 * n2 * n3 for (n1, n2, n3) in self.tables.values())


def _pinned_path_count(path, L: ListAssignment, c: int, d: int) -> int:
    """Proper colorings of the path with endpoints pinned to c and d."""
    sub = from_edges(len(path), [(i, i + 1) for i in range(len(path) - 1)])
    lists = [L.list_of(v) for v in path]
    lists[0] = frozenset({c})
    lists[-1] = frozenset({d})
    if c not in L.list_of(path[0]) or d not in L.list_of(path[-1]):
        return 0
    return count_list_colorings(sub, ListAssignment.from_sets(lists))


def theta_decomposition(g: Graph, L: ListAssignment) -> ThetaDecomposition:
    """Split P(G,L) of a theta graph over endpoint color pairs:
    P(G,L) = sum over (c,d) in L(u) x L(v) of the product of the three
    pinned path counts.  The identity is asserted against direct
    enumeration."""
    paths = theta_paths(g)
    if paths is None:
        raise HypothesisError("graph is not a three-path theta graph")
    if any(len(p) < 3 for p in paths):
        raise HypothesisError("paths of length 1 leave no room to pin endpoints")
    u, v = paths[0][0], paths[0][-1]
    tables = {}
    for c in sorted(L.list_of(u)):
        for d in sorted(L.list_of(v)):
            tables[(c, d)] = tuple(_pinned_path_count(p, L, c, d)
                                   for p in paths)
    dec = ThetaDecomposition(u, v, tuple(tuple(p) for p in paths), tables)
    direct = count_list_colorings(g, L)
    assert dec.total == direct, (dec.total, direct)
    return dec


# ---------------------------------------------------------------------------
# claim validators
# ---------------------------------------------------------------------------

@dataclass
class LemmaReport:
    lemma_id: str
    instance: str
    lhs: object
    rhs: object
    holds: bool
    detail: str = ""
    payload: dict = field(default_factory=dict)


def _require(cond: bool, msg: str):
    if not cond:
        raise HypothesisError(msg)


def _theta_with_assignment(instance) -> tuple[int, int, Graph, ListAssignment]:
    k = instance["k"]
    m = instance["m"]
    L = instance["L"]
    g = build_theta((2, 2, 2 * k))
    _require(k >= 2, "need k >= 2")
    _require(L.n == g.n, "assignment size mismatch")
    _require(L.is_m_assignment(m), f"lists must all have size {m}")
    return k, m, g, L


def _check_pendant_identity(instance) -> LemmaReport:
    from .search import list_color_function
    g = instance["g"]
    m = instance["m"]
    attach = instance.get("attach", 0)
    g2 = add_pendant(g, attach)
    lhs = list_color_function(g2, m).value
    rhs = (m - 1) * list_color_function(g, m).value
    return LemmaReport("L2.3", f"n={g.n} m={m} attach={attach}", lhs, rhs,
                       lhs == rhs, "extended equals (m-1) times base")


def _check_amgm(instance) -> LemmaReport:
    k, m, g, L = _theta_with_assignment(instance)
    dec = theta_decomposition(g, L)
    count = dec.total
    prod = 1
    for counts in dec.tables.values():
        for n in counts:
            prod *= n
    msq = m * m
    lhs = count ** msq
    rhs = m ** (2 * msq) * prod
    return LemmaReport("C3.2", f"k={k} m={m}", lhs, rhs, lhs >= rhs,
                       "count^(m^2) >= m^(2m^2) * prod of path counts")


def _short_path_counts(Lu, Lw, Lv, m):
    out = {}
    for c in sorted(Lu):
        for d in sorted(Lv):
            out[(c, d)] = m - (c in Lw) - (d in Lw and d != c)
    return out


def _check_short_path_tight_pairs(instance) -> LemmaReport:
    m = instance["m"]
    Lu, Lw, Lv = instance["Lu"], instance["Lw"], instance["Lv"]
    _require(m >= 3, "need m >= 3")
    _require(len(Lu) == len(Lw) == len(Lv) == m, "lists must have size m")
    counts = _short_path_counts(Lu, Lw, Lv, m)
    a = len(set(Lu) & set(Lv))
    lhs = 4 * sum(1 for n in counts.values() if n == m - 2)
    rhs = (a + m) ** 2 - 4 * a
    return LemmaReport("L3.3ii", f"m={m} a={a}", lhs, rhs, lhs <= rhs,
                       "4 * #minimal pairs <= (a+m)^2 - 4a")


def _check_same_endpoint_lists(instance) -> LemmaReport:
    k, m, g, L = _theta_with_assignment(instance)
    _require(m >= 3, "need m >= 3")
    _require(L.list_of(0) == L.list_of(g.n - 1), "endpoint lists must agree")
    lhs = count_list_colorings(g, L)
    rhs = theta222k_poly(k, m)
    return LemmaReport("L3.4", f"k={k} m={m}", lhs, rhs, lhs >= rhs,
                       "count >= constant-list count when branch lists agree")


def _check_even_path_bounds(instance) -> LemmaReport:
    k = instance["k"]
    m = instance["m"]
    L = instance["L"]
    _require(k >= 1 and m >= 3, "need k >= 1, m >= 3")
    nverts = 2 * k + 1
    _require(L.n == nverts, "assignment must cover the 2k-edge path")
    _require(L.is_m_assignment(m), f"lists must all have size {m}")
    path = list(range(nverts))
    sub = from_edges(nverts, [(i, i + 1) for i in range(nverts - 1)])
    low_num = (m - 1) ** (2 * k + 1) - (m - 1)   # over m(m-1)
    high_num = (m - 1) ** (2 * k) + (m - 1)      # over m
    low_ok = True
    high_pairs = 0
    for c in sorted(L.list_of(0)):
        for d in sorted(L.list_of(nverts - 1)):
            pinned = ListAssignment.from_sets(
                [{c}] + [L.list_of(v) for v in path[1:-1]] + [{d}])
            n = count_list_colorings(sub, pinned)
            if m * (m - 1) * n < low_num:
                low_ok = False
            if m * n >= high_num:
                high_pairs += 1
    holds = low_ok and high_pairs >= m
    return LemmaReport("L3.5", f"k={k} m={m}", high_pairs, m, holds,
                       "every pinned count meets the floor; >= m pairs meet "
                       f"the higher bound (floor ok: {low_ok})")


def _check_distinct_lists_m3(instance) -> LemmaReport:
    k, m, g, L = _theta_with_assignment(instance)
    _require(m == 3, "claim is specific to 3-assignments")
    _require(L.list_of(0) != L.list_of(g.n - 1), "endpoint lists must differ")
    lhs = count_list_colorings(g, L)
    rhs = theta222k_poly(k, 3)
    return LemmaReport("L3.6", f"k={k}", lhs, rhs, lhs >= rhs,
                       "3-assignment count >= constant-list count")


def _greedy_floor(k: int, m: int) -> int:
    return (m - 1) ** (2 * k - 1) * (m - 2) ** 2


def _pinned_edge_pair(g: Graph, L: ListAssignment):
    """First edge (w,z) with colors x in L(w)-L(z), y in L(z)-L(w)."""
    for (w, z) in g.edges():
        dx = sorted(L.list_of(w) - L.list_of(z))
        dy = sorted(L.list_of(z) - L.list_of(w))
        if dx and dy:
            return w, z, dx[0], dy[0]
    return None


def _check_dp_gap(instance) -> LemmaReport:
    k, m, g, L = _theta_with_assignment(instance)
    _require(m >= 4, "need m >= 4")
    found = _pinned_edge_pair(g, L)
    _require(found is not None, "no edge with one-sided colors on both ends")
    w, z, _, _ = found
    d = len(L.list_of(w) - L.list_of(z))
    lhs = count_list_colorings(g, L)
    rhs = theta_dp_formula(k, m) + _greedy_floor(k, m) * d
    return LemmaReport("L3.7", f"k={k} m={m} d={d}", lhs, rhs, lhs >= rhs,
                       "count exceeds the cover-minimum by the greedy floor "
                       "times the list difference")


def _check_pinned_edge_floor(instance) -> LemmaReport:
    k, m, g, L = _theta_with_assignment(instance)
    _require(m >= 4, "need m >= 4")
    found = _pinned_edge_pair(g, L)
    _require(found is not None, "no edge with one-sided colors on both ends")
    w, z, x, y = found
    pinned = L.replace(w, {x}).replace(z, {y})
    lhs = count_list_colorings(g, pinned)
    rhs = _greedy_floor(k, m)
    return LemmaReport("L3.8", f"k={k} m={m} pin=({w}:{x},{z}:{y})", lhs, rhs,
                       lhs >= rhs, "pinned-edge count meets the greedy floor")


def _check_oversize_floor(instance) -> LemmaReport:
    from .search import list_color_function
    g = instance["g"]
    m = instance["m"]
    L = instance["L"]
    _require(L.n == g.n, "assignment size mismatch")
    sizes = L.sizes()
    _require(all(s >= m for s in sizes), f"every list must have size >= {m}")
    pl = list_color_function(g, m).value
    num = pl
    for s in sizes:
        num *= s
    den = m ** g.n
    lhs = count_list_colorings(g, L)
    rhs = -(-num // den)  # ceil
    return LemmaReport("L4.1", f"n={g.n} m={m} sizes={sizes}", lhs, rhs,
                       lhs >= rhs, "oversized-list count >= scaled minimum")


def _check_star_floor(instance) -> LemmaReport:
    L = instance["L"]
    n = L.n - 1
    _require(n >= 1, "need at least one outer vertex")
    _require(L.is_m_assignment(2), "lists must all have size 2")
    _require(len({L.masks[v] for v in range(L.n)}) > 1,
             "lists must not all be equal")
    g = from_edges(L.n, [(0, v) for v in range(1, L.n)])
    lhs = count_list_colorings(g, L)
    return LemmaReport("O4.3", f"star n={n}", lhs, 3, lhs >= 3,
                       "non-constant 2-assignment of a star has >= 3 colorings")


def _check_join_probe(instance) -> LemmaReport:
    from .graph import join
    from .search import list_color_function
    g = instance["g"]
    seed = instance.get("seed", 0)
    budget = instance.get("budget", 400)
    h = join(build_family_text("complete:1"), g)
    p = count_proper_colorings(h, 3)
    rep = list_color_function(h, 3, mode="heuristic", budget=budget, seed=seed)
    holds = rep.hi >= p
    detail = ("no violation found (heuristic probe)" if holds
              else "probe found an assignment below the m-coloring count")
    return LemmaReport("P4.4", f"n={g.n} seed={seed}", rep.hi, p, holds, detail)


def _check_join_identity(instance) -> LemmaReport:
    from .graph import join
    g = instance["g"]
    m = instance["m"]
    _require(m >= 1, "need m >= 1")
    h = join(build_family_text("complete:1"), g)
    lhs = count_proper_colorings(h, m)
    rhs = m * count_proper_colorings(g, m - 1)
    return LemmaReport("T1.6", f"n={g.n} m={m}", lhs, rhs, lhs == rhs,
                       "apex-join count factors through one fewer color")


def _check_decomposition_identity(instance) -> LemmaReport:
    k, m, g, L = _theta_with_assignment(instance)
    dec = theta_decomposition(g, L)  # identity asserted inside
    direct = count_list_colorings(g, L)
    return LemmaReport("L3.1", f"k={k} m={m}", dec.total, direct,
                       dec.total == direct, "sum of path-count products "
                       "equals the direct count")


_CHECKERS = {
    "L2.3": _check_pendant_identity,
    "L3.1": _check_decomposition_identity,
    "C3.2": _check_amgm,
    "L3.3ii": _check_short_path_tight_pairs,
    "L3.4": _check_same_endpoint_lists,
    "L3.5": _check_even_path_bounds,
    "L3.6": _check_distinct_lists_m3,
    "L3.7": _check_dp_gap,
    "L3.8": _check_pinned_edge_floor,
    "L4.1": _check_oversize_floor,
    "O4.3": _check_star_floor,
    "P4.4": _check_join_probe,
    "T1.6": _check_join_identity,
}

LEMMA_IDS = tuple(sorted(_CHECKERS))


def validate_lemma(lemma_id: str, instance: dict) -> LemmaReport:
    """Check one numbered claim on one admissible instance.

    Raises HypothesisError when the instance violates the claim's
    hypotheses; a report with holds=False means the implementation (not
    the claim) is broken.
    """
    if lemma_id not in _CHECKERS:
        raise KeyError(f"unknown id {lemma_id!r}; known: {', '.join(LEMMA_IDS)}")
    return _CHECKERS[lemma_id](instance)


# ---------------------------------------------------------------------------
# seeded instance generation
# ---------------------------------------------------------------------------

def random_list_assignment(rng: random.Random, n: int, m: int,
                           pool: Optional[int] = None) -> ListAssignment:
    """Uniform m-subsets from a pool of size m+3 (the suite default)."""
    p = pool if pool is not None else m + 3
    return ListAssignment.from_sets(
        [rng.sample(range(p), m) for _ in range(n)])


def random_connected_graph(rng: random.Random, n: int,
                           extra: float = 0.3) -> Graph:
    """Random spanning tree plus each remaining edge with probability
    ``extra``."""
    edges = set()
    verts = list(range(n))
    rng.shuffle(verts)
    for i in range(1, n):
        u = verts[rng.randrange(i)]
        v = verts[i]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra:
                edges.add((u, v))
    return from_edges(n, sorted(edges))


def _theta_instance(rng: random.Random, ks, ms) -> dict:
    k = rng.choice(ks)
    m = rng.choice(ms)
    n = 2 * k + 3
    return {"k": k, "m": m, "L": random_list_assignment(rng, n, m)}


def random_instance(lemma_id: str, rng: random.Random) -> dict:
    """A seeded admissible instance for the given claim id."""
    if lemma_id == "L2.3":
        n = rng.randint(3, 5)
        g = random_connected_graph(rng, n)
        return {"g": g, "m": 2, "attach": rng.randrange(n)}
    if lemma_id in ("L3.1", "C3.2"):
        return _theta_instance(rng, ks=(2, 3), ms=(2, 3))
    if lemma_id == "L3.3ii":
        m = rng.choice((3, 4, 5))
        return {"m": m,
                "Lu": frozenset(rng.sample(range(m + 3), m)),
                "Lw": frozenset(rng.sample(range(m + 3), m)),
                "Lv": frozenset(rng.sample(range(m + 3), m))}
    if lemma_id == "L3.4":
        inst = _theta_instance(rng, ks=(2, 3), ms=(3, 4))
        n = inst["L"].n
        inst["L"] = inst["L"].replace(n - 1, inst["L"].list_of(0))
        return inst
    if lemma_id == "L3.5":
        k = rng.choice((2, 3))
        m = rng.choice((3, 4))
        return {"k": k, "m": m,
                "L": random_list_assignment(rng, 2 * k + 1, m)}
    if lemma_id == "L3.6":
        while True:
            inst = _theta_instance(rng, ks=(2, 3), ms=(3,))
            L = inst["L"]
            if L.list_of(0) != L.list_of(L.n - 1):
                return inst
    if lemma_id in ("L3.7", "L3.8"):
        while True:
            inst = _theta_instance(rng, ks=(2, 3), ms=(4,))
            g = build_theta((2, 2, 2 * inst["k"]))
            if _pinned_edge_pair(g, inst["L"]) is not None:
                return inst
    if lemma_id == "L4.1":
        n = rng.randint(3, 5)
        g = random_connected_graph(rng, n)
        m = 2
        sizes = [m + rng.choice((0, 0, 1, 2)) for _ in range(n)]
        L = ListAssignment.from_sets(
            [rng.sample(range(m + 4), s) for s in sizes])
        return {"g": g, "m": m, "L": L}
    if lemma_id == "O4.3":
        n = rng.randint(1, 5)
        while True:
            L = ListAssignment.from_sets(
                [rng.sample(range(4), 2) for _ in range(n + 1)])
            if len(set(L.masks)) > 1:
                return {"L": L}
    if lemma_id == "P4.4":
        k = rng.choice((2,))
        builders = [lambda: build_theta((2, 2, 2 * k)),
                    lambda: build_family_text(f"cycle:{2 * rng.randint(2, 3)}"),
                    lambda: build_family_text(f"path:{rng.randint(2, 6)}")]
        g = rng.choice(builders)()
        assert core_class(g).kind in ("K1", "even-cycle", "theta-2-2-2k")
        return {"g": g, "seed": rng.randrange(1 << 30), "budget": 300}
    if lemma_id == "T1.6":
        n = rng.randint(2, 6)
        return {"g": random_connected_graph(rng, n), "m": rng.choice((3, 4, 5))}
    raise KeyError(f"unknown id {lemma_id!r}")


def run_lemma_trials(lemma_id: str, trials: int, seed: int) -> list[LemmaReport]:
    """Seeded regression run: generate admissible instances and validate
    each one."""
    rng = random.Random(f"{lemma_id}|{seed}")
    return [validate_lemma(lemma_id, random_instance(lemma_id, rng))
            for _ in range(trials)]


def run_lemma_suite(trials: int = 50, seed: int = 0,
                    ids: Optional[tuple] = None) -> dict[str, list[LemmaReport]]:
    return {lid: run_lemma_trials(lid, trials, seed)
            for lid in (ids or LEMMA_IDS)}
