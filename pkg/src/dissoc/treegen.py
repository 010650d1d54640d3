"""Exhaustive generation of free trees, plus labeled-tree oracles.

Free trees come out one per isomorphism class via the classic
successor walk over level sequences in lexicographically decreasing
order: a rooted tree is written as its DFS preorder levels (root at 1),
the successor trims the last deep vertex and re-expands, and a
centroid-canonicality filter keeps exactly one rooted representative of
every free tree (the first root subtree must not be taller, larger, or
lexicographically later than the rest of the tree).

Labeled trees come from Pruefer sequences and serve as an independent
oracle: decoding every sequence of length n-2 and deduplicating by
canonical code must produce the same isomorphism classes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from itertools import product
from typing import Iterator

from .errors import GuardExceeded
from .forest import Forest

PRUEFER_LIMIT = 9


@dataclass(frozen=True)
class LevelSequence:
    """DFS preorder levels of a rooted tree; the root has level 1."""

    seq: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.seq or self.seq[0] != 1:
            raise ValueError("level sequence must start at level 1")
        for i in range(1, len(self.seq)):
            if not 2 <= self.seq[i] <= self.seq[i - 1] + 1:
                raise ValueError(f"invalid level {self.seq[i]} at position {i}")


def forest_from_level_sequence(ls: LevelSequence) -> Forest:
    """Decode preorder levels into a tree; vertex i is the i-th preorder visit."""
    seq = ls.seq
    edges = []
    stack: list[int] = []
    for i, lvl in enumerate(seq):
        while stack and seq[stack[-1]] >= lvl:
            stack.pop()
        if stack:
            edges.append((stack[-1], i))
        stack.append(i)
    return Forest.from_edges(len(seq), edges)


def _next_rooted(seq: list[int], p: int | None = None) -> list[int] | None:
    """Successor rooted tree in decreasing lexicographic level order."""
    if p is None:
        p = len(seq) - 1
        while seq[p] == 2:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(seq: list[int]) -> tuple[list[int], list[int]]:
    """First root subtree (re-rooted at level 1) and the tree without it."""
    m = len(seq)
    seen_child = False
    for i, lvl in enumerate(seq):
        if lvl == 2:
            if seen_child:
                m = i
                break
            seen_child = True
    left = [seq[i] - 1 for i in range(1, m)]
    rest = [1] + seq[m:]
    return left, rest


def _next_free(candidate: list[int]) -> list[int]:
    """Keep a centroid-canonical rooted tree, or jump to the next one."""
    left, rest = _split(candidate)
    left_height = max(left)
    rest_height = max(rest)
    valid = rest_height >= left_height
    if valid and rest_height == left_height:
        if len(left) > len(rest):
            valid = False
        elif len(left) == len(rest) and left > rest:
            valid = False
    if valid:
        return candidate
    p = len(left)
    nxt = _next_rooted(candidate, p)
    assert nxt is not None
    if candidate[p] > 3:
        new_left, _ = _split(nxt)
        suffix = list(range(2, max(new_left) + 2))
        nxt[len(nxt) - len(suffix):] = suffix
    return nxt


def level_sequences(n: int) -> Iterator[LevelSequence]:
    """All centroid-canonical level sequences of order n, decreasing."""
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        yield LevelSequence((1,))
        return
    seq: list[int] | None = list(range(1, n // 2 + 2)) + list(range(2, (n + 1) // 2 + 1))
    while seq is not None:
        nxt = _next_free(seq)
        if nxt is not seq:
            # jumped over non-canonical rootings; validate again before yielding
            seq = nxt
            continue
        yield LevelSequence(tuple(seq))
        seq = _next_rooted(seq)


def free_trees(n: int) -> Iterator[Forest]:
    """One representative tree per isomorphism class of order n."""
    for ls in level_sequences(n):
        yield forest_from_level_sequence(ls)


def free_tree_count(n: int) -> int:
    return sum(1 for _ in level_sequences(n))


def pruefer_decode(seq: tuple[int, ...], n: int) -> Forest:
    """Standard decode: attach the smallest current leaf to each entry."""
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return Forest.from_edges(1, [])
    if len(seq) != n - 2:
        raise ValueError(f"sequence length must be {n - 2}")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapify(leaves)
    edges = []
    for x in seq:
        leaf = heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heappush(leaves, x)
    edges.append((heappop(leaves), heappop(leaves)))
    return Forest.from_edges(n, edges)


def labeled_trees_pruefer(n: int, guard: int = PRUEFER_LIMIT) -> Iterator[Forest]:
    """Every labeled tree on n vertices, one per Pruefer sequence."""
    if n < 1:
        raise ValueError("order must be positive")
    if n > guard:
        raise GuardExceeded(f"labeled enumeration limited to n <= {guard}, got {n}")
    if n == 1:
        yield Forest.from_edges(1, [])
        return
    for seq in product(range(n), repeat=n - 2):
        yield pruefer_decode(seq, n)


def random_labeled_tree(n: int, rng: random.Random) -> Forest:
    """Uniform random labeled tree via a random Pruefer sequence."""
    if n == 1:
        return Forest.from_edges(1, [])
    seq = tuple(rng.randrange(n) for _ in range(n - 2))
    return pruefer_decode(seq, n)
