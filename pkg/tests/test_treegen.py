import random
from itertools import islice

import pytest

from dissoc.errors import GuardExceeded
from dissoc.forest import canonical_code
from dissoc.treegen import (
    LevelSequence,
    forest_from_level_sequence,
    free_tree_count,
    free_trees,
    labeled_trees_pruefer,
    level_sequences,
    pruefer_decode,
    random_labeled_tree,
)

# number of unlabeled trees of order 1, 2, 3, ...
FREE_TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741]


def test_level_sequence_validation():
    LevelSequence((1, 2, 3, 2))
    with pytest.raises(ValueError):
        LevelSequence((2, 3))
    with pytest.raises(ValueError):
        LevelSequence((1, 3))
    with pytest.raises(ValueError):
        LevelSequence((1, 2, 4))
    with pytest.raises(ValueError):
        LevelSequence(())


def test_decode_level_sequence():
    t = forest_from_level_sequence(LevelSequence((1, 2, 3, 2)))
    assert t.edges == ((0, 1), (0, 3), (1, 2))


def test_free_tree_counts():
    for n, want in enumerate(FREE_TREE_COUNTS, start=1):
        assert free_tree_count(n) == want, n


def test_free_trees_n4():
    trees = list(free_trees(4))
    assert len(trees) == 2
    degs = sorted(tuple(sorted(t.degree(v) for v in range(4))) for t in trees)
    assert degs == [(1, 1, 1, 3), (1, 1, 2, 2)]


def test_free_trees_are_valid_and_distinct():
    for n in range(1, 11):
        codes = set()
        for t in free_trees(n):
            assert t.is_tree and t.n == n
            codes.add(canonical_code(t).code)
        assert len(codes) == FREE_TREE_COUNTS[n - 1]


def test_level_sequences_strictly_decreasing():
    seqs = [ls.seq for ls in level_sequences(8)]
    assert all(a > b for a, b in zip(seqs, seqs[1:]))


def test_stream_chunks_cover_the_stream():
    whole = [t.edges for t in free_trees(9)]
    chunks = []
    for lo in range(0, len(whole), 17):
        chunks.extend(t.edges for t in islice(free_trees(9), lo, lo + 17))
    assert chunks == whole


def test_pruefer_cayley_counts():
    assert sum(1 for _ in labeled_trees_pruefer(3)) == 3
    assert sum(1 for _ in labeled_trees_pruefer(4)) == 16
    assert sum(1 for _ in labeled_trees_pruefer(6)) == 1296


def test_pruefer_class_counts():
    assert len({canonical_code(t).code for t in labeled_trees_pruefer(3)}) == 1
    assert len({canonical_code(t).code for t in labeled_trees_pruefer(4)}) == 2
    assert len({canonical_code(t).code for t in labeled_trees_pruefer(6)}) == 6


def test_pruefer_classes_match_free_trees():
    for n in range(1, 9):
        free = {canonical_code(t).code for t in free_trees(n)}
        labeled = {canonical_code(t).code for t in labeled_trees_pruefer(n)}
        assert free == labeled, n


def test_pruefer_guard():
    with pytest.raises(GuardExceeded):
        next(labeled_trees_pruefer(10))


def test_pruefer_decode_known_sequence():
    # sequence (3, 3, 3, 4) encodes a double star on 0..5
    t = pruefer_decode((3, 3, 3, 4), 6)
    assert t.is_tree
    assert sorted(t.degree(v) for v in range(6)) == [1, 1, 1, 1, 2, 4]


def test_random_labeled_tree_reproducible():
    a = random_labeled_tree(12, random.Random(99))
    b = random_labeled_tree(12, random.Random(99))
    assert a.edges == b.edges
    assert a.is_tree


def test_matches_networkx_generator_when_available():
    nx = pytest.importorskip("networkx")
    for n in range(2, 11):
        ours = free_tree_count(n)
        theirs = sum(1 for _ in nx.nonisomorphic_trees(n))
        assert ours == theirs, n
