"""Minimization of P(G,L) over m-assignments: the list color function,
choosability, nu/tau, and the enumerative chromatic-choosability decisions.

Exact mode exhausts m-assignments in restricted-growth canonical form: a
color may appear only after every smaller color has appeared (scanning
vertices, then colors, in index order).  Every m-assignment is a color
renaming of a visited one, and renaming does not change P(G,L), so the
minimum over the canonical family is the true minimum.  The canonical
family draws on at most m*n colors because first-occurrence renaming
introduces at most m fresh colors per vertex.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import _engine
from ._engine import (EngineInfeasible, canonical_assignment_count,
                      canonical_choices)
from .counting import ListAssignment, count_list_colorings, count_proper_colorings
from .graph import Graph, bipartition, bits, chromatic_number, core_class, CoreClass

DEFAULT_BUDGET = 160_000_000

EXACT = "exact"
UPPER_BOUND = "upper-bound"
BUDGET_EXHAUSTED = "budget-exhausted"


class SearchBudgetError(RuntimeError):
    """An exact answer was requested but lies beyond the node budget."""


@dataclass
class SearchReport:
    """Outcome of a minimization: an exact value or an interval."""

    lo: int
    hi: int
    status: str
    witness: Optional[ListAssignment] = None
    stats: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.status == EXACT

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"no exact value (status={self.status})")
        return self.hi

    def __post_init__(self):
        assert self.lo <= self.hi
        if self.exact:
            assert self.lo == self.hi and self.witness is not None


def enumerate_canonical_assignments(n: int, m: int) -> Iterator[ListAssignment]:
    """All m-assignments on n vertices in restricted-growth canonical form,
    in deterministic order.  Some renaming classes appear more than once;
    none is missing."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m * n > 128:
        raise ValueError(f"color universe {m * n} exceeds 128")
    masks = [0] * n

    def rec(v: int, used: int):
        if v == n:
            yield ListAssignment(tuple(masks))
            return
        for mask, j, _cols in canonical_choices(used, m):
            masks[v] = mask
            yield from rec(v + 1, used + j)

    return rec(0, 0)


def _minimize_python(g: Graph, m: int, budget: int):
    best: Optional[int] = None
    witness = None
    leaves = 0
    exhausted = False
    for L in enumerate_canonical_assignments(g.n, m):
        leaves += 1
        c = count_list_colorings(g, L, cap=best)
        if best is None or c < best:
            best, witness = c, L
        if best == 0:
            break
        if leaves >= budget:
            exhausted = leaves < canonical_assignment_count(g.n, m)
            break
    return best, witness, leaves, exhausted


def list_color_function(g: Graph, m: int, mode: str = EXACT,
                        budget: Optional[int] = None, seed: int = 0,
                        threads: int = 1) -> SearchReport:
    """P_l(G,m): the minimum of P(G,L) over all m-assignments L.

    mode="exact" exhausts canonical assignments (status becomes
    budget-exhausted with an upper-bound interval if the leaf budget runs
    out); mode="heuristic" evaluates structured plus seeded random
    assignments and always reports an upper bound.
    """
    if budget is None:
        budget = DEFAULT_BUDGET
    if mode == EXACT:
        return _lcf_exact(g, m, budget, threads)
    if mode == "heuristic":
        return _lcf_heuristic(g, m, budget, seed)
    raise ValueError(f"unknown mode {mode!r}")


def _lcf_exact(g: Graph, m: int, budget: int, threads: int) -> SearchReport:
    t0 = time.perf_counter()
    try:
        best, wit_masks, leaves, exhausted = _engine.minimize_exact(
            g, m, budget, threads)
        witness = ListAssignment(wit_masks)
        engine = "kernel"
    except EngineInfeasible:
        best, witness, leaves, exhausted = _minimize_python(g, m, budget)
        engine = "python"
    stats = {"leaves": leaves, "engine": engine,
             "wall_s": time.perf_counter() - t0}
    if exhausted:
        return SearchReport(0, best, BUDGET_EXHAUSTED, witness, stats)
    return SearchReport(best, best, EXACT, witness, stats)


def random_m_assignment(n: int, m: int, rng: random.Random,
                        pool: Optional[int] = None) -> ListAssignment:
    """Uniform m-subsets from a color pool of size m+3 (default)."""
    pool = pool if pool is not None else m + 3
    return ListAssignment.from_sets(
        rng.sample(range(pool), m) for _ in range(n))


def _structured_candidates(g: Graph, m: int) -> list[ListAssignment]:
    out = [ListAssignment.constant(g.n, m)]
    if m == 2 and g.is_connected() and bipartition(g) is not None:
        cc = core_class(g)
        if cc.kind == "theta-2-2-2k" and cc.k >= 2:
            from .witness import pendant_extension_witness
            out.append(pendant_extension_witness(g))
    if m == 3:
        from .graph import build_family_text
        from .witness import k224_witness
        k224 = build_family_text("multipartite:2,2,4")
        if g.n == k224.n and g.adj == k224.adj:
            out.append(k224_witness()[1])
    return out


def _lcf_heuristic(g: Graph, m: int, budget: int, seed: int) -> SearchReport:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    evals = 0
    best: Optional[int] = None
    witness = None

    def consider(L: ListAssignment) -> bool:
        nonlocal evals, best, witness
        evals += 1
        c = count_list_colorings(g, L, cap=best)
        if best is None or c < best:
            best, witness = c, L
            return True
        return False

    try:
        for L in _structured_candidates(g, m):
            consider(L)
    except ValueError:
        pass
    if best is None:
        consider(ListAssignment.constant(g.n, m))
    pool = m + 3
    while evals < budget and best > 0:
        consider(random_m_assignment(g.n, m, rng, pool))
        # first-improvement hill climb from the incumbent
        improved = True
        while improved and evals < budget and best > 0:
            improved = False
            v = rng.randrange(g.n)
            current = sorted(witness.list_of(v))
            drop = rng.choice(current)
            add = rng.randrange(pool)
            if add in current:
                continue
            cand = witness.replace(v, [c for c in current if c != drop] + [add])
            improved = consider(cand)
    stats = {"evals": evals, "engine": "heuristic",
             "wall_s": time.perf_counter() - t0}
    return SearchReport(0, best, UPPER_BOUND, witness, stats)


# ---------------------------------------------------------------------------
# choosability
# ---------------------------------------------------------------------------

def degeneracy(g: Graph) -> int:
    alive = (1 << g.n) - 1
    adj = list(g.adj)
    worst = 0
    for _ in range(g.n):
        v = min(bits(alive), key=lambda x: (bin(adj[x]).count("1"), x))
        worst = max(worst, bin(adj[v]).count("1"))
        alive &= ~(1 << v)
        for w in bits(adj[v]):
            adj[w] &= ~(1 << v)
        adj[v] = 0
    return worst


def exact_feasible(g: Graph, m: int, budget: int) -> bool:
    return canonical_assignment_count(g.n, m) <= budget


def is_m_choosable(g: Graph, m: int, budget: Optional[int] = None,
                   threads: int = 1) -> bool:
    """Whether every m-assignment admits a proper coloring, i.e.
    P_l(G,m) >= 1 by exhaustive search."""
    report = list_color_function(g, m, EXACT, budget, threads=threads)
    if report.status == BUDGET_EXHAUSTED:
        if report.hi == 0:
            return False
        raise SearchBudgetError(
            f"choosability of m={m} undecided within budget")
    return report.value >= 1


def list_chromatic_number(g: Graph, budget: Optional[int] = None,
                          threads: int = 1) -> int:
    """Least m for which g is m-choosable.

    A graph of degeneracy d is always (d+1)-choosable (greedy in the
    elimination order), which bounds the search; below that bound each m
    is decided by exhaustive enumeration.
    """
    if budget is None:
        budget = DEFAULT_BUDGET
    m = chromatic_number(g)
    greedy_bound = degeneracy(g) + 1
    while True:
        if m >= greedy_bound:
            return m
        if is_m_choosable(g, m, budget, threads):
            return m
        m += 1


# ---------------------------------------------------------------------------
# nu, tau, and enumerative chromatic-choosability
# ---------------------------------------------------------------------------

@dataclass
class PointReport:
    """Comparison of P_l and P at one list size."""

    m: int
    p: int
    pl_lo: int
    pl_hi: int
    status: str  # exact | heuristic | theorem
    witness: Optional[ListAssignment] = None

    @property
    def certainly_equal(self) -> bool:
        return (self.status == "theorem"
                or (self.status == EXACT and self.pl_lo == self.p))

    @property
    def certainly_unequal(self) -> bool:
        return self.pl_hi < self.p


@dataclass
class NuTauReport:
    chi: int
    cap: int
    nu: tuple[int, int]
    tau: tuple[int, int]
    points: list[PointReport]
    note: str = ""


def nu_tau(g: Graph, budget: Optional[int] = None, seed: int = 0,
           threads: int = 1, heuristic_budget: int = 20_000) -> NuTauReport:
    """Probe nu(G) and tau(G): compare P_l(G,m) with P(G,m) for
    m = chi..cap, where equality is guaranteed for m >= |E|-1 when
    |E| >= 4 and for every m when the graph is chordal-small (|E| <= 3).
    Infeasible points degrade to heuristic upper bounds and widen the
    reported intervals."""
    if not g.is_connected():
        raise ValueError("nu/tau are probed on connected graphs")
    if budget is None:
        budget = DEFAULT_BUDGET
    chi = chromatic_number(g)
    e = g.edge_count
    if e <= 3:
        # a connected graph with at most 3 edges is a tree or a triangle,
        # hence chordal, hence enumeratively chromatic-choosable
        return NuTauReport(chi, chi, (chi, chi), (chi, chi), [],
                           note="certified-by-theorem: chordal")
    cap = max(chi, e - 1)
    points: list[PointReport] = []
    for m in range(chi, cap + 1):
        p = count_proper_colorings(g, m)
        if exact_feasible(g, m, budget):
            rep = list_color_function(g, m, EXACT, budget, threads=threads)
            if rep.exact:
                points.append(PointReport(m, p, rep.value, rep.value, EXACT,
                                          rep.witness))
                continue
        if m >= e - 1:
            # the |E|-1 threshold theorem certifies equality here
            points.append(PointReport(m, p, p, p, "theorem"))
            continue
        rep = list_color_function(g, m, "heuristic", heuristic_budget, seed)
        points.append(PointReport(m, p, 0, min(rep.hi, p), "heuristic",
                                  rep.witness if rep.hi < p else None))
    # nu: first point with certain equality; an uncertain point before it
    # widens the interval (the last point, at m >= |E|-1, is always equal)
    nu_lo = nu_hi = cap + 1
    for i, pt in enumerate(points):
        if pt.certainly_equal:
            nu_lo = nu_hi = pt.m
            break
        if not pt.certainly_unequal:
            nu_lo = pt.m
            nu_hi = next((q.m for q in points[i + 1:] if q.certainly_equal),
                         cap + 1)
            break
    tau_lo = chi
    tau_hi = chi
    for pt in points:
        if pt.certainly_unequal:
            tau_lo = max(tau_lo, pt.m + 1)
        if not pt.certainly_equal:
            tau_hi = max(tau_hi, pt.m + 1)
    return NuTauReport(chi, cap, (nu_lo, nu_hi), (tau_lo, tau_hi), points)


@dataclass
class EccDecision:
    verdict: Optional[bool]  # None = unknown within budget
    reason: str
    witness: Optional[ListAssignment] = None
    stats: dict = field(default_factory=dict)


def is_weakly_ecc(g: Graph, budget: Optional[int] = None, seed: int = 0,
                  threads: int = 1,
                  heuristic_budget: int = 20_000) -> EccDecision:
    """Whether P_l(G, chi(G)) = P(G, chi(G))."""
    if budget is None:
        budget = DEFAULT_BUDGET
    chi = chromatic_number(g)
    p = count_proper_colorings(g, chi)
    if not exact_feasible(g, chi, budget):
        rep = list_color_function(g, chi, "heuristic", heuristic_budget, seed)
        if rep.hi < p:
            return EccDecision(False,
                               f"witness: P(G,L) = {rep.hi} < {p} = P(G,{chi})",
                               rep.witness, rep.stats)
        return EccDecision(None, "exact minimization beyond budget; "
                           "no violating assignment found heuristically",
                           stats=rep.stats)
    rep = list_color_function(g, chi, EXACT, budget, threads=threads)
    if rep.exact:
        if rep.value == p:
            return EccDecision(True, f"exhaustive: P_l(G,{chi}) = {p} = P",
                               stats=rep.stats)
        return EccDecision(False,
                           f"witness: P(G,L) = {rep.value} < {p} = P(G,{chi})",
                           rep.witness, rep.stats)
    if rep.hi < p:
        return EccDecision(False,
                           f"witness: P(G,L) = {rep.hi} < {p} = P(G,{chi})",
                           rep.witness, rep.stats)
    return EccDecision(None, "budget exhausted", stats=rep.stats)


def is_ecc(g: Graph, budget: Optional[int] = None, seed: int = 0,
           threads: int = 1) -> EccDecision:
    """Whether tau(G) = chi(G), i.e. P_l(G,m) = P(G,m) for all m >= chi."""
    report = nu_tau(g, budget, seed, threads)
    for pt in report.points:
        if pt.certainly_unequal:
            return EccDecision(False,
                               f"gap at m={pt.m}: P_l <= {pt.pl_hi} < {pt.p} = P",
                               pt.witness)
    if all(pt.certainly_equal for pt in report.points):
        return EccDecision(True, report.note or
                           f"equality verified for m={report.chi}..{report.cap}; "
                           "threshold theorem beyond")
    return EccDecision(None, "some points undecided within budget")


@dataclass
class ClassifyResult:
    ecc: bool
    core: CoreClass
    reason: str
    witness: Optional[ListAssignment] = None
    witness_count: Optional[int] = None


def classify_bipartite(g: Graph) -> ClassifyResult:
    """Decide enumerative chromatic-choosability of a connected graph with
    chi = 2 from its core pattern; for a Theta(2,2,2k) core (k >= 2) also
    emit the constructive 2-assignment with exactly one proper coloring."""
    if not g.is_connected():
        raise ValueError("classification requires a connected graph")
    if bipartition(g) is None:
        raise ValueError("classification requires chi(G) <= 2")
    cc = core_class(g)
    if cc.kind in ("K1", "even-cycle", "K23"):
        return ClassifyResult(True, cc, f"core is {cc.kind}")
    if cc.kind == "theta-2-2-2k":
        from .witness import pendant_extension_witness
        L = pendant_extension_witness(g)
        count = count_list_colorings(g, L)
        if count != 1:
            raise AssertionError(
                f"constructed witness has {count} colorings, expected 1")
        return ClassifyResult(False, cc,
                              f"core is Theta(2,2,{2 * cc.k}); witness has "
                              "exactly one proper coloring", L, count)
    return ClassifyResult(False, cc, "core outside the characterized list "
                          "(not even 2-choosable)")
