import random

import pytest

from chromacount.counting import (ListAssignment, count_list_colorings,
                                  count_proper_colorings)
from chromacount.dp import (Cover, CoverError, complete_cover,
                            count_dp_colorings, cover_from_list_assignment,
                            dp_color_function, identity_cover,
                            spanning_tree_edges, theta_dp_formula)
from chromacount.graph import build_family_text, build_theta
from chromacount.search import list_color_function
from chromacount.witness import random_connected_graph


def test_cover_validation():
    g = build_family_text("path:3")
    with pytest.raises(CoverError):
        Cover(2, {(0, 1): (0, 0), (1, 2): (0, 1)})
    with pytest.raises(CoverError):
        Cover(2, {(0, 1): (0, 1)}, masks={(1, 2): 1})
    with pytest.raises(CoverError):
        count_dp_colorings(g, Cover(2, {(0, 1): (0, 1)}))


def test_identity_cover_counts_proper_colorings():
    for spec in ("path:4", "cycle:5", "complete:4", "theta:2,2,4"):
        g = build_family_text(spec)
        for m in (2, 3):
            assert (count_dp_colorings(g, identity_cover(g, m))
                    == count_proper_colorings(g, m)), (spec, m)


def test_count_cap():
    g = build_family_text("cycle:4")
    cover = identity_cover(g, 3)
    assert count_dp_colorings(g, cover, cap=5) == 5


def test_spanning_tree_is_a_tree():
    g = build_theta((2, 2, 4))
    tree = spanning_tree_edges(g)
    assert len(tree) == g.n - 1
    assert all(e in g.edges() for e in tree)


def test_theta_dp_values():
    assert theta_dp_formula(2, 2) == 0
    assert theta_dp_formula(2, 3) == 78
    assert theta_dp_formula(3, 3) == 318
    with pytest.raises(ValueError):
        theta_dp_formula(1, 3)


def test_dp_color_function_theta():
    rep = dp_color_function(build_theta((2, 2, 4)), 3)
    assert rep.exact and rep.value == 78
    assert rep.stats["covers"] == 36
    assert count_dp_colorings(build_theta((2, 2, 4)), rep.witness) == 78
    rep2 = dp_color_function(build_theta((2, 2, 4)), 2)
    assert rep2.exact and rep2.value == 0


def test_dp_budget_interval():
    rep = dp_color_function(build_theta((2, 2, 4)), 3, budget=5)
    assert rep.status == "budget-exhausted"
    assert rep.lo == 0 and rep.hi >= 78


def test_cover_from_list_assignment_preserves_count():
    rng = random.Random(5)
    for _ in range(100):
        g = random_connected_graph(rng, rng.randint(2, 6))
        m = rng.choice((2, 3))
        L = ListAssignment.from_sets(
            [rng.sample(range(m + 3), m) for _ in range(g.n)])
        cov = cover_from_list_assignment(g, L)
        assert count_dp_colorings(g, cov) == count_list_colorings(g, L)


def test_complete_cover_never_increases_count():
    g = build_theta((2, 2, 4))
    L = ListAssignment.from_sets(
        [random.Random(9).sample(range(5), 2) for _ in range(g.n)])
    partial = cover_from_list_assignment(g, L)
    full = complete_cover(partial)
    assert full.is_full
    assert count_dp_colorings(g, full) <= count_dp_colorings(g, partial)


def test_sandwich_dp_below_list_below_chromatic():
    rng = random.Random(2)
    for _ in range(50):
        g = random_connected_graph(rng, rng.randint(2, 5))
        p = count_proper_colorings(g, 2)
        pl = list_color_function(g, 2).value
        pdp = dp_color_function(g, 2).value
        assert pdp <= pl <= p
