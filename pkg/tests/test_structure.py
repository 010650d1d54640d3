import itertools

import pytest

from dissoc.dissociation import alpha3_count_dp, brute_force_mds, enumerate_mds
from dissoc.extremal import lt8, star_construction
from dissoc.forest import Forest, canonical_code
from dissoc.kpath import _tree_k_path_sets
from dissoc.structure import (
    build_canonical_mds,
    classify_vertices,
    critical_edges_alpha3,
    critical_edges_mu3,
    critical_structure,
    verify_structure_theorems,
)
from dissoc.treegen import free_trees

from util import path, star


def test_critical_edges_small_trees():
    assert critical_edges_alpha3(path(3)) == ((0, 1), (1, 2))
    assert critical_edges_alpha3(star(4)) == ()
    # on the 4-path only the middle edge is critical: deleting it frees
    # both halves (2 + 2 > 3) while deleting an end edge does not help
    assert critical_edges_alpha3(path(4)) == ((1, 2),)


def test_mu3_critical_matches_alpha3_critical():
    for n in range(2, 10):
        for t in free_trees(n):
            assert critical_edges_alpha3(t) == critical_edges_mu3(t), (n, t.edges)


def test_critical_structure_p3():
    s = critical_structure(path(3))
    assert s.insulated_edges == ()
    assert s.critical_triples == ((0, 1, 2),)
    assert s.eta == 2


def test_critical_structure_no_critical_edges():
    s = critical_structure(star(4))
    assert s.eta == 0
    assert s.insulated_edges == () and s.critical_triples == ()


def test_critical_structure_mixed_tree():
    # hub 0; 2-path leg (1,2); pendant 3; 3-path leg (4,5,6)
    t = star_construction(("P3", "P2", "P4"))
    s = critical_structure(t)
    assert s.insulated_edges == ((0, 1),)
    assert s.critical_triples == ((4, 5, 6),)
    assert s.eta == 3


def test_classify_p3_all_flexible():
    c = classify_vertices(path(3))
    assert c.flexible.members() == (0, 1, 2)
    assert len(c.static_included) == 0 and len(c.static_excluded) == 0


def test_classify_p5():
    c = classify_vertices(path(5))
    assert c.static_included.members() == (0, 1, 3, 4)
    assert c.static_excluded.members() == (2,)
    assert c.flexible.members() == ()


def test_classify_lt8():
    c = classify_vertices(lt8())
    assert c.flexible.members() == (0, 1, 2, 3)  # the inner 4-path
    assert c.static_included.members() == (4, 5, 6, 7)  # the pendant leaves
    assert c.static_excluded.members() == ()


def test_classification_matches_enumeration():
    for n in range(1, 8):
        for t in free_trees(n):
            sets = list(enumerate_mds(t))
            c = classify_vertices(t)
            for v in range(n):
                memberships = sum(1 for s in sets if v in s)
                if memberships == len(sets):
                    assert v in c.static_included
                elif memberships == 0:
                    assert v in c.static_excluded
                else:
                    assert v in c.flexible


def test_flexible_equals_critical_endpoints():
    for n in range(2, 9):
        for t in free_trees(n):
            endpoints = {v for e in critical_edges_alpha3(t) for v in e}
            assert set(classify_vertices(t).flexible) == endpoints


def test_build_canonical_mds_examples():
    for root in range(5):
        assert build_canonical_mds(path(5), root).members() == (0, 1, 3, 4)
    assert build_canonical_mds(path(3), 0).members() == (1, 2)


def test_build_canonical_mds_every_root():
    for n in range(1, 9):
        for t in free_trees(n):
            alpha = alpha3_count_dp(t).alpha3
            for root in range(n):
                assert len(build_canonical_mds(t, root)) == alpha


def test_deleting_critical_edge_forces_both_endpoints():
    for n in range(2, 8):
        for t in free_trees(n):
            alpha = alpha3_count_dp(t).alpha3
            for e in critical_edges_alpha3(t):
                reduced = t.without_edge(*e)
                r_alpha, r_sets = brute_force_mds(reduced)
                assert r_alpha == alpha + 1
                assert all(e[0] in s and e[1] in s for s in r_sets)


def _max_3_matchings(tree):
    """All maximum 3-matchings as tuples of vertex-set masks."""
    paths = _tree_k_path_sets(tree, 3)
    best: list[tuple[int, ...]] = [()]

    def rec(i, used, chosen):
        nonlocal best
        if len(chosen) > len(best[0]):
            best = [tuple(chosen)]
        elif len(chosen) == len(best[0]) and chosen:
            best.append(tuple(chosen))
        for j in range(i, len(paths)):
            if used & paths[j] == 0:
                chosen.append(paths[j])
                rec(j + 1, used | paths[j], chosen)
                chosen.pop()

    rec(0, 0, [])
    top = max(len(m) for m in best)
    return [m for m in set(best) if len(m) == top]


def test_every_maximum_3_matching_covers_critical_edges():
    for n in range(3, 8):
        for t in free_trees(n):
            matchings = _max_3_matchings(t)
            for u, v in critical_edges_alpha3(t):
                want = (1 << u) | (1 << v)
                for m in matchings:
                    assert any(mask & want == want for mask in m), (t.edges, (u, v))


def test_verify_structure_theorems_all_pass():
    for n in range(1, 10):
        for t in free_trees(n):
            rep = verify_structure_theorems(t)
            bad = {k: v for k, v in rep.items() if v.status != "pass"}
            assert not bad, (n, t.edges, bad)


def test_verify_skips_enumeration_over_cap():
    rep = verify_structure_theorems(path(3), enumeration_cap=2)
    assert rep["every_mds_hits_each_critical_edge"].status == "skipped"
    assert rep["mds_meets_exact_pattern"].status == "skipped"
    # non-enumeration checks still ran
    assert rep["alpha3_equals_static_plus_critical"].status == "pass"


def test_verify_pass_results_carry_no_witness():
    rep = verify_structure_theorems(path(5))
    assert all(cr.witness is None for cr in rep.values() if cr.status == "pass")


def test_branching_bound_monotone_in_triple_count():
    # with the flexible count fixed, trading two insulated edges for a
    # triple (3 choices > 2*2/... ) never lowers the bound
    for flexible in range(0, 13):
        values = [
            3**x * 2 ** ((flexible - 3 * x) // 2)
            for x in range(flexible // 3 + 1)
            if (flexible - 3 * x) % 2 == 0
        ]
        assert values == sorted(values)


def test_structure_ops_work_on_forests():
    forest = Forest.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    assert critical_edges_alpha3(forest) == ((0, 1), (1, 2), (3, 4), (4, 5))
    s = critical_structure(forest)
    assert len(s.critical_triples) == 2
    rep = verify_structure_theorems(forest)
    assert all(cr.status == "pass" for cr in rep.values())
