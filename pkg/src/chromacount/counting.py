"""Exact evaluation of P(G,m) and P(G,L), plus closed-form values for the
standard families.

Counts are Python ints (arbitrary precision), so there is no overflow to
detect; values like m**n at n = 20 are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import (Graph, FamilySpec, PathSpec, CycleSpec, CompleteSpec,
                    BipartiteSpec, ThetaSpec, JoinSpec, bits, bit_count)

MAX_COLOR = 127


class UnsupportedFamilyError(ValueError):
    """No closed-form chromatic polynomial is wired up for this family."""


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex color lists over the universe 0..127, stored as bitmasks."""

    masks: tuple[int, ...]

    def __post_init__(self):
        for v, mask in enumerate(self.masks):
            if mask <= 0:
                raise ValueError(f"empty list at vertex {v}")
            if mask >> (MAX_COLOR + 1):
                raise ValueError(f"color >= {MAX_COLOR + 1} at vertex {v}")

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]]) -> "ListAssignment":
        return cls(tuple(sum(1 << c for c in set(s)) for s in sets))

    @classmethod
    def constant(cls, n: int, m: int) -> "ListAssignment":
        """The constant m-assignment with lists {0,...,m-1}."""
        if m < 1:
            raise ValueError("constant assignment needs m >= 1")
        return cls(((1 << m) - 1,) * n)

    @property
    def n(self) -> int:
        return len(self.masks)

    def list_of(self, v: int) -> frozenset[int]:
        return frozenset(bits(self.masks[v]))

    def sizes(self) -> tuple[int, ...]:
        return tuple(bit_count(m) for m in self.masks)

    def is_m_assignment(self, m: int) -> bool:
        return all(s == m for s in self.sizes())

    @property
    def uniform_size(self) -> Optional[int]:
        sizes = set(self.sizes())
        return sizes.pop() if len(sizes) == 1 else None

    def max_color(self) -> int:
        return max(m.bit_length() for m in self.masks) - 1

    def replace(self, v: int, colors: Iterable[int]) -> "ListAssignment":
        masks = list(self.masks)
        masks[v] = sum(1 << c for c in set(colors))
        return ListAssignment(tuple(masks))

    def renamed(self, perm: dict[int, int]) -> "ListAssignment":
        return ListAssignment.from_sets(
            [perm.get(c, c) for c in self.list_of(v)] for v in range(self.n))


def counting_order(g: Graph) -> list[int]:
    """Max-degree-first elimination order with index tie-break."""
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


def count_list_colorings(g: Graph, L: ListAssignment, cap: Optional[int] = None) -> int:
    """Exact number of proper L-colorings of g.

    With ``cap`` the search stops once ``cap`` colorings are found, so the
    result is min(P(G,L), cap); the true count is >= cap exactly when the
    result equals cap.
    """
    if L.n != g.n:
        raise ValueError("list assignment does not cover every vertex")
    if cap is not None and cap <= 0:
        return 0
    if L.max_color() < 63:
        from ._engine import count_kernel
        return count_kernel(g, L, cap)
    return _count_python(g, L, cap)


def _count_python(g: Graph, L: ListAssignment, cap: Optional[int]) -> int:
    order = counting_order(g)
    n = g.n
    pos_of = {v: i for i, v in enumerate(order)}
    earlier = [[pos_of[w] for w in g.neighbors(order[i]) if pos_of[w] < i]
               for i in range(n)]
    masks = [L.masks[v] for v in order]
    limit = cap if cap is not None else float("inf")
    chosen = [0] * n
    count = 0

    def descend(i: int) -> bool:
        nonlocal count
        avail = masks[i]
        for j in earlier[i]:
            avail &= ~chosen[j]
        while avail:
            low = avail & -avail
            avail ^= low
            chosen[i] = low
            if i == n - 1:
                count += 1
                if count >= limit:
                    return True
            elif descend(i + 1):
                return True
        return False

    descend(0)
    return count


def count_proper_colorings(g: Graph, m: int, cap: Optional[int] = None) -> int:
    """P(G,m): proper m-colorings, counted as list colorings with constant
    lists {0..m-1}."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return 0
    return count_list_colorings(g, ListAssignment.constant(g.n, m), cap)


def count_proper_colorings_dc(g: Graph, m: int) -> int:
    """Independent P(G,m) oracle: memoized deletion-contraction."""
    memo: dict[tuple[int, frozenset[tuple[int, int]]], int] = {}

    def rec(n: int, edges: frozenset[tuple[int, int]]) -> int:
        if not edges:
            return m ** n
        key = (n, edges)
        if key in memo:
            return memo[key]
        u, v = min(edges)
        deleted = edges - {(u, v)}
        # contract v into u, then relabel w > v down by one
        merged = set()
        for a, b in deleted:
            a = u if a == v else a
            b = u if b == v else b
            if a != b:
                merged.add((min(a, b), max(a, b)))
        contracted = frozenset(
            (a - (a > v), b - (b > v)) for a, b in merged)
        result = rec(n, deleted) - rec(n - 1, contracted)
        memo[key] = result
        return result

    if m < 0:
        raise ValueError("m must be >= 0")
    return rec(g.n, frozenset(g.edges()))


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def falling_factorial(m: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= m - i
    return out


def cycle_poly(n: int, m: int) -> int:
    return (m - 1) ** n + (-1) ** n * (m - 1)


def tree_poly(n: int, m: int) -> int:
    return m * (m - 1) ** (n - 1)


def k2n_poly(n: int, m: int) -> int:
    return m * (m - 1) ** n + m * (m - 1) * (m - 2) ** n


def theta222k_poly(k: int, m: int) -> int:
    """Chromatic polynomial of Theta(2,2,2k)."""
    return ((m - 2) ** 2 * ((m - 1) ** (2 * k + 1) - (m - 1))
            + (m - 1) ** 2 * ((m - 1) ** (2 * k) + (m - 1)))


def closed_form(spec: FamilySpec, m: int) -> int:
    """Closed-form P(G,m) for complete graphs, cycles, paths (trees),
    K_{2,n}, Theta(2,2,2k), and K_1 v (supported family)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if isinstance(spec, CompleteSpec):
        return falling_factorial(m, spec.n)
    if isinstance(spec, CycleSpec):
        return cycle_poly(spec.n, m)
    if isinstance(spec, PathSpec):
        return tree_poly(spec.n, m)
    if isinstance(spec, BipartiteSpec):
        if spec.l == 2:
            return k2n_poly(spec.n, m)
        if spec.n == 2:
            return k2n_poly(spec.l, m)
        raise UnsupportedFamilyError("only K_{2,n} has a wired-in closed form")
    if isinstance(spec, ThetaSpec):
        lengths = sorted(spec.lengths)
        if len(lengths) == 3 and lengths[:2] == [2, 2] and lengths[2] % 2 == 0:
            return theta222k_poly(lengths[2] // 2, m)
        raise UnsupportedFamilyError("theta closed form covers Theta(2,2,2k) only")
    if isinstance(spec, JoinSpec):
        for one, other in ((spec.left, spec.right), (spec.right, spec.left)):
            if isinstance(one, CompleteSpec) and one.n == 1:
                return 0 if m == 0 else m * closed_form(other, m - 1)
        raise UnsupportedFamilyError("join closed form covers K_1 v G only")
    raise UnsupportedFamilyError(f"no closed form for {spec!r}")
