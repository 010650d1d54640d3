"""Shared test helpers: tiny builders and a brute-force isomorphism oracle."""

from __future__ import annotations

from dissoc.forest import Forest


def path(n: int) -> Forest:
    return Forest.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Forest:
    return Forest.from_edges(n, [(0, i) for i in range(1, n)])


def relabel(forest: Forest, perm: list[int]) -> Forest:
    """Apply vertex permutation: new index of old v is perm[v]."""
    return Forest.from_edges(forest.n, [(perm[u], perm[v]) for u, v in forest.edges])


def brute_isomorphic(a: Forest, b: Forest) -> bool:
    """Backtracking vertex-mapping search; exact, exponential, small n only."""
    if a.n != b.n or len(a.edges) != len(b.edges):
        return False
    if sorted(map(a.degree, range(a.n))) != sorted(map(b.degree, range(b.n))):
        return False
    order = sorted(range(a.n), key=a.degree, reverse=True)
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in range(b.n):
            if w in used or b.degree(w) != a.degree(v):
                continue
            if any((x in a.adjacency[v]) != (y in b.adjacency[w]) for x, y in mapping.items()):
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return extend(0)
