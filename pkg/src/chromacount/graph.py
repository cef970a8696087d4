"""Small simple graphs as adjacency bit-rows, graph6 I/O, a family DSL,
and structural utilities (core, bipartition, chromatic number).

Vertices are 0..n-1 with n <= 31 so a bit-row fits comfortably in one
machine word.  Graphs are immutable after construction and safe to share.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

MAX_VERTICES = 31


class FamilyParseError(ValueError):
    """Raised on a malformed family-DSL string; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class Graph6Error(ValueError):
    """Raised on malformed graph6 input."""


@dataclass(frozen=True)
class Graph:
    """Simple graph on n <= 31 vertices; ``adj[v]`` is the neighbor bitmask."""

    n: int
    adj: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency row count does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"adjacency row {v} references vertices >= n")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label count does not match n")

    def degree(self, v: int) -> int:
        return bit_count(self.adj[v])

    def neighbors(self, v: int) -> Iterator[int]:
        return bits(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels else f"v{v}"

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_count(mask: int) -> int:
    return bin(mask).count("1")


def from_edges(n: int, edges, labels=None) -> Graph:
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) outside vertex range 0..{n - 1}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj), tuple(labels) if labels else None)


# ---------------------------------------------------------------------------
# family DSL
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathSpec:
    n: int


@dataclass(frozen=True)
class CycleSpec:
    n: int


@dataclass(frozen=True)
class CompleteSpec:
    n: int


@dataclass(frozen=True)
class BipartiteSpec:
    l: int
    n: int


@dataclass(frozen=True)
class MultipartiteSpec:
    parts: tuple[int, ...]


@dataclass(frozen=True)
class ThetaSpec:
    lengths: tuple[int, ...]


@dataclass(frozen=True)
class JoinSpec:
    left: "FamilySpec"
    right: "FamilySpec"


@dataclass(frozen=True)
class PendantSpec:
    count: int
    base: "FamilySpec"


@dataclass(frozen=True)
class Graph6Spec:
    text: str


FamilySpec = (PathSpec | CycleSpec | CompleteSpec | BipartiteSpec |
              MultipartiteSpec | ThetaSpec | JoinSpec | PendantSpec | Graph6Spec)

_INT = re.compile(r"\d+")


def parse_family_spec(text: str) -> FamilySpec:
    """Parse the family DSL.

    Grammar::

        spec := atom | "join:" spec "+" spec | "pendant:" int "+" spec
        atom := "path:" n | "cycle:" n | "complete:" n | "bipartite:" l "," n
              | "multipartite:" p1 ("," pi)* | "theta:" l1 ("," li)*
              | "g6:" graph6text

    A ``g6:`` atom consumes the remainder of the string (the graph6
    alphabet overlaps with the DSL punctuation), so it cannot be the left
    operand of a join.
    """
    if not text.isascii():
        raise FamilyParseError("non-ASCII input", 0)
    spec, pos = _parse_spec(text, 0)
    if pos != len(text):
        raise FamilyParseError("trailing input after spec", pos)
    return spec


def _ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] == " ":
        pos += 1
    return pos


def _parse_int(text: str, pos: int) -> tuple[int, int]:
    pos = _ws(text, pos)
    m = _INT.match(text, pos)
    if not m:
        raise FamilyParseError("expected an integer", pos)
    return int(m.group()), m.end()


def _parse_int_list(text: str, pos: int) -> tuple[tuple[int, ...], int]:
    vals = []
    v, pos = _parse_int(text, pos)
    vals.append(v)
    while pos < len(text) and text[pos] == ",":
        v, pos = _parse_int(text, pos + 1)
        vals.append(v)
    return tuple(vals), pos


def _expect(text: str, pos: int, token: str) -> int:
    pos = _ws(text, pos)
    if not text.startswith(token, pos):
        raise FamilyParseError(f"expected {token!r}", pos)
    return pos + len(token)


def _parse_spec(text: str, pos: int) -> tuple[FamilySpec, int]:
    pos = _ws(text, pos)
    for head in ("join:", "pendant:"):
        if text.startswith(head, pos):
            pos0 = pos + len(head)
            if head == "join:":
                left, pos1 = _parse_spec(text, pos0)
                pos1 = _expect(text, pos1, "+")
                right, pos2 = _parse_spec(text, pos1)
                return JoinSpec(left, right), pos2
            count, pos1 = _parse_int(text, pos0)
            pos1 = _expect(text, pos1, "+")
            base, pos2 = _parse_spec(text, pos1)
            if count < 1:
                raise FamilyParseError("pendant count must be >= 1", pos0)
            return PendantSpec(count, base), pos2
    for head, maker in (("path:", PathSpec), ("cycle:", CycleSpec),
                        ("complete:", CompleteSpec)):
        if text.startswith(head, pos):
            n, pos1 = _parse_int(text, pos + len(head))
            if head == "cycle:" and n < 3:
                raise FamilyParseError("cycle needs n >= 3 (simple graphs only)", pos)
            if head != "cycle:" and n < 1:
                raise FamilyParseError("vertex count must be >= 1", pos)
            return maker(n), pos1
    if text.startswith("bipartite:", pos):
        vals, pos1 = _parse_int_list(text, pos + len("bipartite:"))
        if len(vals) != 2:
            raise FamilyParseError("bipartite takes exactly two part sizes", pos)
        if min(vals) < 1:
            raise FamilyParseError("part sizes must be >= 1", pos)
        return BipartiteSpec(vals[0], vals[1]), pos1
    if text.startswith("multipartite:", pos):
        vals, pos1 = _parse_int_list(text, pos + len("multipartite:"))
        if min(vals) < 1:
            raise FamilyParseError("part sizes must be >= 1", pos)
        return MultipartiteSpec(vals), pos1
    if text.startswith("theta:", pos):
        vals, pos1 = _parse_int_list(text, pos + len("theta:"))
        if len(vals) < 2:
            raise FamilyParseError("theta needs at least two path lengths", pos)
        if min(vals) < 1:
            raise FamilyParseError("path lengths must be >= 1", pos)
        if sum(1 for v in vals if v == 1) > 1:
            raise FamilyParseError("at most one theta path may have length 1", pos)
        return ThetaSpec(vals), pos1
    if text.startswith("g6:", pos):
        return Graph6Spec(text[pos + 3:]), len(text)
    raise FamilyParseError("unrecognized family spec", pos)


def build_family(spec: FamilySpec) -> Graph:
    """Build the graph described by a FamilySpec with its documented
    deterministic vertex order."""
    if isinstance(spec, PathSpec):
        return from_edges(spec.n, [(i, i + 1) for i in range(spec.n - 1)],
                          [f"p{i + 1}" for i in range(spec.n)])
    if isinstance(spec, CycleSpec):
        n = spec.n
        return from_edges(n, [(i, (i + 1) % n) for i in range(n)],
                          [f"c{i + 1}" for i in range(n)])
    if isinstance(spec, CompleteSpec):
        n = spec.n
        _check_size(n)
        return from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)],
                          [f"k{i + 1}" for i in range(n)])
    if isinstance(spec, BipartiteSpec):
        return build_family(MultipartiteSpec((spec.l, spec.n)))
    if isinstance(spec, MultipartiteSpec):
        parts = spec.parts
        n = sum(parts)
        _check_size(n)
        starts = []
        acc = 0
        for p in parts:
            starts.append(acc)
            acc += p
        edges = []
        for a in range(len(parts)):
            for b in range(a + 1, len(parts)):
                for i in range(parts[a]):
                    for j in range(parts[b]):
                        edges.append((starts[a] + i, starts[b] + j))
        labels = []
        letters = "xyzwabcdefgh"
        for idx, p in enumerate(parts):
            letter = letters[idx] if idx < len(letters) else f"q{idx}_"
            labels.extend(f"{letter}{i + 1}" for i in range(p))
        return from_edges(n, edges, labels)
    if isinstance(spec, ThetaSpec):
        return build_theta(spec.lengths)
    if isinstance(spec, JoinSpec):
        return join(build_family(spec.left), build_family(spec.right))
    if isinstance(spec, PendantSpec):
        # pendant:k adds a pendant path of length k hanging off vertex 0
        return add_pendant_path(build_family(spec.base), spec.count, attach=0)
    if isinstance(spec, Graph6Spec):
        return from_graph6(spec.text)
    raise TypeError(f"unknown spec node {spec!r}")


def build_family_text(text: str) -> Graph:
    return build_family(parse_family_spec(text))


def _check_size(n: int):
    if n > MAX_VERTICES:
        raise FamilyParseError(f"graph would have {n} > {MAX_VERTICES} vertices", 0)


def build_theta(lengths: tuple[int, ...]) -> Graph:
    """Generalized theta graph: end vertices u, v joined by internally
    disjoint paths of the given lengths.

    Vertex order is u, then the internal vertices of each path in turn,
    then v.  For three paths the internals are labelled x*, y*, z*.
    """
    n = 2 + sum(l - 1 for l in lengths)
    _check_size(n)
    u = 0
    v = n - 1
    labels = ["u"] + [""] * (n - 2) + ["v"]
    letters = "xyz" if len(lengths) == 3 else None
    edges = []
    idx = 1
    for pi, l in enumerate(lengths):
        prev = u
        for j in range(l - 1):
            letter = letters[pi] if letters else f"s{pi + 1}_"
            labels[idx] = f"{letter}{j + 1}"
            edges.append((prev, idx))
            prev = idx
            idx += 1
        edges.append((prev, v))
    return from_edges(n, edges, labels)


def join(g: Graph, h: Graph) -> Graph:
    """Join G v H: disjoint union plus all cross edges.  G's vertices come
    first."""
    n = g.n + h.n
    _check_size(n)
    edges = g.edges()
    edges += [(u + g.n, v + g.n) for u, v in h.edges()]
    edges += [(u, w + g.n) for u in range(g.n) for w in range(h.n)]
    gl = [g.label_of(i) for i in range(g.n)]
    hl = [h.label_of(i) for i in range(h.n)]
    labels = gl + hl if len(set(gl + hl)) == n else None
    return from_edges(n, edges, labels)


def add_pendant(g: Graph, attach: int) -> Graph:
    """Add one new degree-1 vertex adjacent to ``attach``."""
    return add_pendant_path(g, 1, attach)


def add_pendant_path(g: Graph, length: int, attach: int = 0) -> Graph:
    n = g.n + length
    _check_size(n)
    edges = g.edges()
    prev = attach
    for i in range(length):
        edges.append((prev, g.n + i))
        prev = g.n + i
    labels = None
    if g.labels:
        labels = list(g.labels) + [f"w{i + 1}" for i in range(length)]
    return from_edges(n, edges, labels)


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def to_graph6(g: Graph) -> str:
    """Encode in standard graph6 (single-byte size form, n <= 31)."""
    chunks = [chr(g.n + 63)]
    bitbuf = 0
    nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            bitbuf = bitbuf << 1 | (g.adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                chunks.append(chr(bitbuf + 63))
                bitbuf = nbits = 0
    if nbits:
        chunks.append(chr((bitbuf << (6 - nbits)) + 63))
    return "".join(chunks)


def from_graph6(text: str) -> Graph:
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    if not text:
        raise Graph6Error("empty graph6 string")
    for ch in text:
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} outside graph6 alphabet")
    n = ord(text[0]) - 63
    if n == 63:
        raise Graph6Error("multi-byte size header: graphs over 31 vertices unsupported")
    if not 1 <= n <= MAX_VERTICES:
        raise Graph6Error(f"vertex count {n} outside 1..{MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = text[1:]
    if len(body) < nbytes:
        raise Graph6Error("truncated graph6 body")
    if len(body) > nbytes:
        raise Graph6Error("trailing bytes after graph6 body")
    stream = 0
    for ch in body:
        stream = stream << 6 | (ord(ch) - 63)
    pad = 6 * nbytes - nbits
    if pad and stream & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    stream >>= pad
    adj = [0] * n
    pos = nbits
    for j in range(1, n):
        for i in range(j):
            pos -= 1
            if stream >> pos & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def read_graph6_lines(lines) -> list[Graph]:
    return [from_graph6(line.strip()) for line in lines if line.strip()]


# ---------------------------------------------------------------------------
# structure: core, bipartition, chromatic number
# ---------------------------------------------------------------------------

def leaf_deletion_order(g: Graph) -> tuple[list[tuple[int, int]], list[int]]:
    """Successively delete degree-1 vertices (lowest index first).

    Returns ``(deletions, core_vertices)`` where ``deletions`` is the list
    of (deleted vertex, its unique neighbor at deletion time) in order.
    The final result is order-independent.
    """
    if not g.is_connected():
        raise ValueError("leaf deletion requires a connected graph")
    alive = (1 << g.n) - 1
    adj = list(g.adj)
    deletions = []
    while True:
        leaf = -1
        for v in bits(alive):
            if bit_count(adj[v]) == 1 and bit_count(alive) > 1:
                leaf = v
                break
        if leaf < 0:
            break
        nbr = (adj[leaf]).bit_length() - 1
        deletions.append((leaf, nbr))
        alive &= ~(1 << leaf)
        adj[nbr] &= ~(1 << leaf)
        adj[leaf] = 0
    return deletions, list(bits(alive))


def core_of(g: Graph) -> Graph:
    """The core: iterated deletion of degree-1 vertices (a tree collapses
    to K_1).  Vertices are relabelled in increasing original order."""
    _, keep = leaf_deletion_order(g)
    sub, _ = induced_subgraph(g, keep)
    return sub


def induced_subgraph(g: Graph, keep: list[int]) -> tuple[Graph, dict[int, int]]:
    keep = sorted(keep)
    remap = {old: new for new, old in enumerate(keep)}
    edges = [(remap[u], remap[v]) for u, v in g.edges()
             if u in remap and v in remap]
    labels = [g.label_of(v) for v in keep] if g.labels else None
    return from_edges(len(keep), edges, labels), remap


def bipartition(g: Graph) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """2-coloring classes, or None if some component has an odd cycle."""
    side = [-1] * g.n
    for start in range(g.n):
        if side[start] >= 0:
            continue
        side[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if side[w] < 0:
                    side[w] = side[v] ^ 1
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
    return (frozenset(v for v in range(g.n) if side[v] == 0),
            frozenset(v for v in range(g.n) if side[v] == 1))


def _greedy_coloring_bound(g: Graph) -> int:
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    color = {}
    used = 0
    for v in order:
        taken = {color[w] for w in g.neighbors(v) if w in color}
        c = 0
        while c in taken:
            c += 1
        color[v] = c
        used = max(used, c + 1)
    return used


def _greedy_clique_bound(g: Graph) -> int:
    best = 1
    for v in range(g.n):
        clique = 1 << v
        cand = g.adj[v]
        while cand:
            # extend by the candidate with most neighbors among candidates
            w = max(bits(cand), key=lambda x: (bit_count(g.adj[x] & cand), -x))
            clique |= 1 << w
            cand &= g.adj[w]
        best = max(best, bit_count(clique))
    return best


def is_colorable(g: Graph, k: int) -> bool:
    """Existence of a proper k-coloring, by backtracking in max-degree
    order."""
    if k >= g.n:
        return True
    if k <= 0:
        return g.n == 0
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    colors = [-1] * g.n

    def place(i: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        taken = 0
        for w in bits(g.adj[v]):
            if colors[w] >= 0:
                taken |= 1 << colors[w]
        # symmetry break: first i vertices use at most i colors
        limit = min(k, i + 1)
        for c in range(limit):
            if not taken >> c & 1:
                colors[v] = c
                if place(i + 1):
                    return True
        colors[v] = -1
        return False

    return place(0)


def chromatic_number(g: Graph) -> int:
    if g.edge_count == 0:
        return 1
    if bipartition(g) is not None:
        return 2
    lo = max(3, _greedy_clique_bound(g))
    hi = _greedy_coloring_bound(g)
    for k in range(lo, hi):
        if is_colorable(g, k):
            return k
    return hi


# ---------------------------------------------------------------------------
# core classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoreClass:
    """Pattern match of a bipartite core: kind in {'K1', 'even-cycle',
    'K23', 'theta-2-2-2k', 'other'}; k is the cycle/theta parameter."""

    kind: str
    k: Optional[int] = None


def theta_paths(g: Graph) -> Optional[list[list[int]]]:
    """Decompose g as a 3-path theta graph.

    Returns the three u-v paths (each a vertex list starting at the same
    endpoint u and ending at v), or None if g is not such a theta graph.
    """
    deg3 = [v for v in range(g.n) if g.degree(v) == 3]
    if len(deg3) != 2:
        return None
    if any(g.degree(v) != 2 for v in range(g.n) if v not in deg3):
        return None
    u, v = deg3
    paths = []
    seen_internal = set()
    for first in g.neighbors(u):
        path = [u, first]
        prev, cur = u, first
        while cur != v:
            if cur in seen_internal or g.degree(cur) != 2:
                return None
            seen_internal.add(cur)
            nxt = next(w for w in g.neighbors(cur) if w != prev)
            prev, cur = cur, nxt
            path.append(cur)
        paths.append(path)
    if len(paths) != 3:
        return None
    if len(seen_internal) != g.n - 2:
        return None
    return sorted(paths, key=len)


def core_class(g: Graph) -> CoreClass:
    """Classify the core of a connected bipartite graph against the
    patterns K_1, C_{2k+2}, K_{2,3} = Theta(2,2,2), Theta(2,2,2k) k >= 2."""
    if bipartition(g) is None:
        raise ValueError("core classification requires a bipartite graph")
    core = core_of(g)
    if core.n == 1:
        return CoreClass("K1")
    if all(core.degree(v) == 2 for v in range(core.n)):
        # connected 2-regular = a single cycle; bipartite makes it even
        return CoreClass("even-cycle", k=(core.n - 2) // 2)
    paths = theta_paths(core)
    if paths is not None:
        lengths = sorted(len(p) - 1 for p in paths)
        if lengths[:2] == [2, 2] and lengths[2] % 2 == 0:
            k = lengths[2] // 2
            return CoreClass("K23") if k == 1 else CoreClass("theta-2-2-2k", k=k)
    return CoreClass("other")
