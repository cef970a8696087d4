import itertools

import pytest
from hypothesis import given, settings, strategies as st

from chromacount.graph import (CycleSpec, FamilyParseError, Graph6Error,
                               JoinSpec, PendantSpec, ThetaSpec, add_pendant,
                               add_pendant_path, bipartition, build_family,
                               build_family_text, build_theta,
                               chromatic_number, core_class, core_of,
                               from_edges, from_graph6, is_colorable, join,
                               leaf_deletion_order, parse_family_spec,
                               theta_paths, to_graph6)


def random_graph_strategy(max_n=8):
    return st.integers(1, max_n).flatmap(
        lambda n: st.builds(
            lambda pairs: from_edges(n, sorted({(min(u, v), max(u, v))
                                                for u, v in pairs if u != v})),
            st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                     max_size=2 * n)))


def test_from_edges_validation():
    g = from_edges(3, [(0, 1), (1, 2)])
    assert g.degree(1) == 2
    assert g.edges() == [(0, 1), (1, 2)]
    with pytest.raises(ValueError):
        from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        from_edges(2, [(0, 5)])
    with pytest.raises(ValueError):
        from_edges(32, [])


def test_parse_family_atoms():
    assert parse_family_spec("cycle:5") == CycleSpec(5)
    assert parse_family_spec("theta:2,2,4") == ThetaSpec((2, 2, 4))
    spec = parse_family_spec("join: complete:1 + cycle:4")
    assert isinstance(spec, JoinSpec)
    spec = parse_family_spec("pendant: 2 + theta:2,2,4")
    assert isinstance(spec, PendantSpec)


def test_parse_error_reports_offset():
    with pytest.raises(FamilyParseError) as exc:
        parse_family_spec("cycle:x")
    assert exc.value.offset == 6
    with pytest.raises(FamilyParseError):
        parse_family_spec("cycle:2")  # a cycle needs n >= 3
    with pytest.raises(FamilyParseError):
        parse_family_spec("theta:1,1,2")  # at most one length-1 path
    with pytest.raises(FamilyParseError):
        parse_family_spec("nonsense:3")


def test_build_family_sizes():
    assert build_family_text("cycle:6").n == 6
    assert build_family_text("complete:4").edge_count == 6
    assert build_family_text("bipartite:2,3").edge_count == 6
    assert build_family_text("multipartite:2,2,4").edge_count == 4 + 8 + 8
    th = build_family_text("theta:2,2,4")
    assert th.n == 7 and th.edge_count == 8
    jn = build_family_text("join: complete:1 + cycle:4")
    assert jn.n == 5 and jn.edge_count == 8
    pd = build_family_text("pendant: 3 + cycle:4")
    assert pd.n == 7 and pd.edge_count == 7


def test_theta_vertex_order():
    g = build_theta((2, 2, 4))
    # branch vertices 0 and n-1, one internal per short path, then the rest
    assert g.degree(0) == 3 and g.degree(g.n - 1) == 3
    assert g.has_edge(0, 1) and g.has_edge(1, g.n - 1)
    assert g.has_edge(0, 2) and g.has_edge(2, g.n - 1)
    assert g.has_edge(0, 3) and g.has_edge(4, 3) and g.has_edge(4, 5)
    assert g.has_edge(5, g.n - 1)


def test_join_keeps_left_vertices_first():
    g = join(build_family_text("path:2"), build_family_text("path:3"))
    assert g.n == 5
    for u in (0, 1):
        for v in (2, 3, 4):
            assert g.has_edge(u, v)


@settings(max_examples=200, deadline=None)
@given(random_graph_strategy())
def test_graph6_round_trip(g):
    assert from_graph6(to_graph6(g)).adj == g.adj


def test_graph6_rejects_garbage():
    with pytest.raises(Graph6Error):
        from_graph6("")
    with pytest.raises(Graph6Error):
        from_graph6("B" + chr(130))


def test_leaf_deletion_and_core():
    th = build_theta((2, 2, 4))
    g = add_pendant_path(th, 3)
    deletions, core_verts = leaf_deletion_order(g)
    assert len(deletions) == 3
    assert sorted(core_verts) == list(range(th.n))
    assert core_of(g).adj == th.adj
    # a tree collapses to a single vertex
    assert core_of(build_family_text("path:6")).n == 1


def test_bipartition_and_chromatic_number():
    assert bipartition(build_family_text("cycle:5")) is None
    a, b = bipartition(build_family_text("cycle:6"))
    assert len(a) == len(b) == 3
    assert chromatic_number(build_family_text("cycle:5")) == 3
    assert chromatic_number(build_family_text("complete:5")) == 5
    assert chromatic_number(build_family_text("multipartite:2,2,4")) == 3
    assert chromatic_number(build_family_text("path:7")) == 2
    assert not is_colorable(build_family_text("complete:4"), 3)


def _isomorphic(g, h) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    ge = set(g.edges())
    for perm in itertools.permutations(range(g.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in ge
               for u, v in h.edges()):
            return True
    return False


def test_theta_paths_structure():
    g = build_theta((2, 2, 4))
    paths = theta_paths(g)
    assert sorted(len(p) - 1 for p in paths) == [2, 2, 4]
    assert theta_paths(build_family_text("cycle:6")) is None


def test_core_class_matches_isomorphism_oracle():
    cases = [
        ("path:5", "K1"),
        ("cycle:8", "even-cycle"),
        ("pendant: 2 + cycle:6", "even-cycle"),
        ("bipartite:2,3", "K23"),
        ("theta:2,2,4", "theta-2-2-2k"),
        ("pendant: 3 + theta:2,2,6", "theta-2-2-2k"),
        ("bipartite:3,3", "other"),
    ]
    for spec, expected in cases:
        g = build_family_text(spec)
        cc = core_class(g)
        assert cc.kind == expected, spec
        core = core_of(g)
        if expected == "K23":
            assert _isomorphic(core, build_family_text("bipartite:2,3"))
        if expected == "theta-2-2-2k":
            assert _isomorphic(core, build_theta((2, 2, 2 * cc.k)))
        if expected == "even-cycle":
            assert _isomorphic(core, build_family_text(f"cycle:{core.n}"))


def test_core_class_rejects_odd_cycles():
    with pytest.raises(ValueError):
        core_class(build_family_text("cycle:5"))


@settings(max_examples=100, deadline=None)
@given(random_graph_strategy(max_n=7), st.integers(0, 6))
def test_pendant_adds_one_leaf(g, attach):
    attach %= g.n
    g2 = add_pendant(g, attach)
    assert g2.n == g.n + 1
    assert g2.degree(g.n) == 1
    assert g2.has_edge(attach, g.n)
