import pytest

from chromacount.counting import count_list_colorings, count_proper_colorings
from chromacount.graph import (add_pendant, build_family_text, build_theta,
                               from_edges)
from chromacount.search import (SearchBudgetError, classify_bipartite,
                                degeneracy, enumerate_canonical_assignments,
                                exact_feasible, is_ecc, is_m_choosable,
                                is_weakly_ecc, list_chromatic_number,
                                list_color_function, nu_tau,
                                random_m_assignment)


def test_canonical_enumeration_is_exhaustive_up_to_renaming():
    # every 2-assignment of P3 from a 4-color pool has a canonical twin
    # with the same count
    import itertools
    from chromacount.counting import ListAssignment
    g = build_family_text("path:3")
    canonical = list(enumerate_canonical_assignments(3, 2))
    canonical_counts = {count_list_colorings(g, L) for L in canonical}
    for sets in itertools.product(
            list(itertools.combinations(range(4), 2)), repeat=3):
        L = ListAssignment.from_sets(sets)
        assert count_list_colorings(g, L) in canonical_counts


def test_exact_list_color_function_small_values():
    # P_l = P for these (equality regime at small m)
    for spec, m in [("path:4", 2), ("cycle:4", 2), ("complete:3", 3)]:
        g = build_family_text(spec)
        rep = list_color_function(g, m)
        assert rep.exact
        assert rep.value == count_proper_colorings(g, m), spec
        assert count_list_colorings(g, rep.witness) == rep.value


def test_exact_theta_gap():
    g = build_theta((2, 2, 4))
    rep = list_color_function(g, 2)
    assert rep.exact and rep.value == 1
    assert count_list_colorings(g, rep.witness) == 1


def test_budget_exhaustion_reports_interval():
    g = build_theta((2, 2, 4))
    rep = list_color_function(g, 2, budget=1000)
    assert rep.status == "budget-exhausted"
    assert rep.lo == 0 and rep.hi >= 1
    assert count_list_colorings(g, rep.witness) == rep.hi


def test_heuristic_mode_reports_upper_bound():
    g = build_theta((2, 2, 4))
    rep = list_color_function(g, 2, mode="heuristic", budget=50, seed=3)
    assert rep.status == "upper-bound"
    # the structured candidate includes the unique-coloring construction
    assert rep.hi == 1
    rep3 = list_color_function(g, 3, mode="heuristic", budget=200, seed=3)
    assert rep3.hi <= count_proper_colorings(g, 3)


def test_heuristic_determinism():
    g = build_family_text("cycle:5")
    a = list_color_function(g, 2, mode="heuristic", budget=300, seed=11)
    b = list_color_function(g, 2, mode="heuristic", budget=300, seed=11)
    assert a.hi == b.hi and a.witness.masks == b.witness.masks


def test_choosability():
    assert is_m_choosable(build_family_text("cycle:4"), 2)
    assert not is_m_choosable(build_family_text("cycle:5"), 2)
    assert is_m_choosable(build_theta((2, 2, 2)), 2)  # K_{2,3}
    assert is_m_choosable(build_theta((2, 2, 4)), 2)
    assert not is_m_choosable(build_family_text("bipartite:3,3"), 2)


def test_choosability_budget_error():
    g = build_family_text("cycle:4")
    with pytest.raises(SearchBudgetError):
        is_m_choosable(g, 2, budget=2)


def test_list_chromatic_number():
    assert list_chromatic_number(build_family_text("path:5")) == 2
    assert list_chromatic_number(build_family_text("cycle:5")) == 3
    assert list_chromatic_number(build_family_text("cycle:6")) == 2
    assert list_chromatic_number(build_family_text("bipartite:2,4")) == 3
    assert list_chromatic_number(build_family_text("complete:4")) == 4


def test_degeneracy():
    assert degeneracy(build_family_text("path:5")) == 1
    assert degeneracy(build_family_text("cycle:6")) == 2
    assert degeneracy(build_family_text("complete:4")) == 3


def test_exact_feasible():
    assert exact_feasible(build_theta((2, 2, 4)), 2, 160_000_000)
    assert not exact_feasible(build_theta((2, 2, 6)), 2, 160_000_000)


def test_nu_tau_c4():
    rep = nu_tau(build_family_text("cycle:4"))
    assert rep.chi == 2
    assert rep.nu == (2, 2) and rep.tau == (2, 2)


def test_nu_tau_theta():
    rep = nu_tau(build_theta((2, 2, 4)), heuristic_budget=500)
    assert rep.chi == 2
    # certified gap at m = 2, so nu and tau are at least 3
    assert rep.nu[0] >= 3 and rep.tau[0] >= 3
    m2 = next(pt for pt in rep.points if pt.m == 2)
    assert m2.certainly_unequal and m2.pl_hi == 1


def test_nu_tau_small_chordal():
    rep = nu_tau(build_family_text("path:3"))
    assert rep.nu == (2, 2) and rep.tau == (2, 2)
    assert "chordal" in rep.note


def test_weakly_ecc():
    assert is_weakly_ecc(build_family_text("cycle:4")).verdict is True
    dec = is_weakly_ecc(build_theta((2, 2, 4)))
    assert dec.verdict is False
    assert count_list_colorings(build_theta((2, 2, 4)), dec.witness) == 1
    k224 = build_family_text("multipartite:2,2,4")
    dec = is_weakly_ecc(k224)
    assert dec.verdict is False
    assert count_list_colorings(k224, dec.witness) == 4


def test_is_ecc():
    assert is_ecc(build_family_text("cycle:4")).verdict is True
    assert is_ecc(build_theta((2, 2, 4))).verdict is False


def test_classify():
    res = classify_bipartite(build_family_text("cycle:6"))
    assert res.ecc and res.core.kind == "even-cycle"
    res = classify_bipartite(build_family_text("bipartite:2,3"))
    assert res.ecc and res.core.kind == "K23"
    g = add_pendant(add_pendant(build_theta((2, 2, 4)), 3), 5)
    res = classify_bipartite(g)
    assert not res.ecc and res.core.kind == "theta-2-2-2k"
    assert res.witness_count == 1
    assert count_list_colorings(g, res.witness) == 1
    res = classify_bipartite(build_family_text("bipartite:3,3"))
    assert not res.ecc and res.core.kind == "other"
    with pytest.raises(ValueError):
        classify_bipartite(build_family_text("cycle:5"))
    with pytest.raises(ValueError):
        classify_bipartite(from_edges(2, []))


def test_random_assignment_shape():
    import random
    L = random_m_assignment(6, 3, random.Random(0))
    assert L.n == 6 and L.is_m_assignment(3)
    assert L.max_color() <= 5


@pytest.mark.slow
def test_theta226_not_2_choosable_exhaustively():
    # 2.57e9 canonical leaves: hours of search, run on demand only
    g = build_theta((2, 2, 6))
    rep = list_color_function(g, 2, budget=3 * 10 ** 9, threads=4)
    assert rep.exact and rep.value == 1
