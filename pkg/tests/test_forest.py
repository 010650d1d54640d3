import itertools
import random

import pytest

from dissoc.errors import ParseError
from dissoc.forest import (
    Forest,
    VertexSet,
    canonical_code,
    centroids,
    normalize_indices,
    parse_edge_list,
    root_at,
    serialize_edge_list,
)
from dissoc.treegen import free_trees, labeled_trees_pruefer

from util import brute_isomorphic, path, relabel, star


def test_vertex_set_basics():
    vs = VertexSet.from_iterable(6, [4, 0, 2])
    assert vs.members() == (0, 2, 4)
    assert len(vs) == 3
    assert 2 in vs and 3 not in vs
    assert vs.with_vertex(3).members() == (0, 2, 3, 4)
    assert vs.without_vertex(0).members() == (2, 4)
    with pytest.raises(ValueError):
        VertexSet.from_iterable(3, [3])


def test_forest_validation():
    with pytest.raises(ValueError, match="self-loop"):
        Forest.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError, match="duplicate"):
        Forest.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError, match="cycle"):
        Forest.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(ValueError, match="out of range"):
        Forest.from_edges(2, [(0, 2)])


def test_parse_smallest_tree():
    f = parse_edge_list("a b\nb c")
    assert f.n == 3
    assert f.edges == ((0, 1), (1, 2))
    assert f.labels == ("a", "b", "c")


def test_parse_rejects_cycle_with_line_number():
    with pytest.raises(ParseError, match="line 3"):
        parse_edge_list("1 2\n2 3\n3 1")


def test_parse_rejects_duplicates_and_self_loops():
    with pytest.raises(ParseError, match="duplicate"):
        parse_edge_list("a b\nb a")
    with pytest.raises(ParseError, match="self-loop"):
        parse_edge_list("a a")
    with pytest.raises(ParseError, match="two labels"):
        parse_edge_list("a b c")


def test_parse_comments_and_isolated_vertices():
    f = parse_edge_list("# header\na b  # trailing\nvertex c\n\n")
    assert f.n == 3
    assert f.edges == ((0, 1),)
    assert f.degree(2) == 0


LT8_TEXT = "u1 u2\nu2 u3\nu3 u4\nu1 v1\nu2 v2\nu3 v3\nu4 v4"


def test_parse_lt8_text():
    f = parse_edge_list(LT8_TEXT)
    assert f.n == 8
    from dissoc.extremal import lt8

    assert canonical_code(f) == canonical_code(lt8())


def test_root_at_levels():
    assert root_at(path(3), 1).level == (1, 0, 1)
    assert root_at(path(4), 0).level == (0, 1, 2, 3)
    lt8 = parse_edge_list(LT8_TEXT)
    view = root_at(lt8, 1)  # root at u2
    assert view.level[7] == 3  # v4


def test_root_at_rejects_disconnected():
    two = Forest.from_edges(2, [])
    with pytest.raises(ValueError, match="disconnected"):
        root_at(two, 0)


def test_post_order_children_before_parents():
    view = root_at(path(5), 2)
    pos = {v: i for i, v in enumerate(view.post_order)}
    for v, p in enumerate(view.parent):
        if p != -1:
            assert pos[v] < pos[p]


def test_canonical_code_relabeling_invariance():
    p4 = path(4)
    assert canonical_code(p4) == canonical_code(relabel(p4, [3, 0, 2, 1]))
    assert canonical_code(p4) != canonical_code(star(4))


def test_canonical_code_rejects_disconnected():
    with pytest.raises(ValueError):
        canonical_code(Forest.from_edges(4, [(0, 1), (2, 3)]))


def test_order7_labeled_trees_have_11_classes():
    codes = {canonical_code(t).code for t in labeled_trees_pruefer(7)}
    assert len(codes) == 11


def test_code_agreement_iff_isomorphic_small_n():
    # codes of distinct class representatives differ and their graphs are
    # non-isomorphic per the permutation-search oracle
    for n in range(2, 8):
        reps = list(free_trees(n))
        codes = [canonical_code(t) for t in reps]
        assert len(set(codes)) == len(reps)
        for (i, a), (j, b) in itertools.combinations(enumerate(reps), 2):
            assert not brute_isomorphic(a, b), (n, i, j)
    # random relabelings keep the code and stay isomorphic
    rng = random.Random(11)
    for n in range(2, 9):
        for t in free_trees(n):
            perm = list(range(n))
            rng.shuffle(perm)
            other = relabel(t, perm)
            assert canonical_code(other) == canonical_code(t)
            assert brute_isomorphic(t, other)


def test_centroid_component_sizes_are_relabeling_invariant():
    rng = random.Random(5)
    for t in free_trees(7):
        base = centroids(t)
        view = root_at(t, base[0])
        perm = list(range(t.n))
        rng.shuffle(perm)
        other = relabel(t, perm)
        assert sorted(perm[c] for c in base) == sorted(centroids(other))


def test_serialize_parse_round_trip_on_canonical_form():
    for n in range(1, 9):
        for t in free_trees(n):
            norm = normalize_indices(t)
            text = serialize_edge_list(norm)
            back = parse_edge_list(text)
            assert back.n == norm.n
            assert back.edges == norm.edges
            # and the canonical text is a fixed point of parse -> serialize
            assert serialize_edge_list(back) == text


def test_serialize_declares_isolated_vertices():
    f = Forest.from_edges(3, [(1, 2)])
    assert serialize_edge_list(f) == "vertex 0\n1 2\n"
    assert parse_edge_list(serialize_edge_list(f)).n == 3


def test_components_and_tree_flags():
    f = Forest.from_edges(5, [(0, 1), (3, 4)])
    assert f.components() == ((0, 1), (2,), (3, 4))
    assert not f.is_tree
    assert path(1).is_tree
    assert path(6).is_tree
