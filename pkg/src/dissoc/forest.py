"""Forests and trees over dense 0-based vertex indices.

A ``Forest`` keeps an edge list, per-vertex sorted adjacency, and the
original string labels when it was parsed from text. All structures are
immutable after construction and safe to share between threads. Rooted
views, centroid location, and an AHU-style canonical code (rooted at the
centroid) give isomorphism-level identity for trees.

Edge-list text format: one edge per line as two whitespace-separated
labels, ``#`` starts a comment, and ``vertex <label>`` declares an
isolated vertex. Labels are mapped to dense indices in order of first
appearance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ParseError

PARENT_NONE = -1


@dataclass(frozen=True)
class VertexSet:
    """Bit-indexed vertex subset over 0..n-1."""

    bits: int
    n: int

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls((1 << n) - 1, n)

    @classmethod
    def from_iterable(cls, n: int, members: Iterable[int]) -> "VertexSet":
        bits = 0
        for v in members:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for n={n}")
            bits |= 1 << v
        return cls(bits, n)

    def members(self) -> tuple[int, ...]:
        return tuple(self)

    def with_vertex(self, v: int) -> "VertexSet":
        return VertexSet(self.bits | (1 << v), self.n)

    def without_vertex(self, v: int) -> "VertexSet":
        return VertexSet(self.bits & ~(1 << v), self.n)

    def intersects(self, other: "VertexSet") -> bool:
        return self.bits & other.bits != 0

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and (self.bits >> v) & 1 == 1

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low


@dataclass(frozen=True)
class Forest:
    """Undirected simple acyclic graph on vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: tuple[str, ...] | None = None,
    ) -> "Forest":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if labels is not None and len(labels) != n:
            raise ValueError("labels must cover all vertices")
        uf = list(range(n))

        def find(x: int) -> int:
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        norm: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        neighbors: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError(f"edge {e} closes a cycle")
            uf[ru] = rv
            seen.add(e)
            norm.append(e)
            neighbors[u].append(v)
            neighbors[v].append(u)
        return cls(
            n=n,
            edges=tuple(sorted(norm)),
            adjacency=tuple(tuple(sorted(ns)) for ns in neighbors),
            labels=labels,
        )

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components in BFS order, keyed by smallest vertex."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            order = [start]
            for v in order:
                for w in self.adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        order.append(w)
            out.append(tuple(order))
        return tuple(out)

    @property
    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    @property
    def is_tree(self) -> bool:
        return self.n >= 1 and len(self.edges) == self.n - 1 and self.is_connected

    def without_edge(self, u: int, v: int) -> "Forest":
        e = (u, v) if u < v else (v, u)
        if e not in self.edges:
            raise ValueError(f"no edge {e}")
        return Forest.from_edges(self.n, (x for x in self.edges if x != e), self.labels)

    def adjacency_masks(self) -> list[int]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks


@dataclass(frozen=True)
class RootedView:
    """Parent/level/post-order data for one rooting of a tree."""

    root: int
    parent: tuple[int, ...]
    level: tuple[int, ...]
    post_order: tuple[int, ...]

    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p != PARENT_NONE:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)


def root_at(forest: Forest, root: int) -> RootedView:
    """Root a connected tree, computing parents and path-length levels."""
    if not 0 <= root < forest.n:
        raise ValueError(f"root {root} out of range")
    if not forest.is_tree:
        raise ValueError("input is disconnected; root each component separately")
    parent = [PARENT_NONE] * forest.n
    level = [0] * forest.n
    order = [root]
    seen = [False] * forest.n
    seen[root] = True
    for v in order:
        for w in forest.adjacency[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                level[w] = level[v] + 1
                order.append(w)
    return RootedView(
        root=root,
        parent=tuple(parent),
        level=tuple(level),
        post_order=tuple(reversed(order)),
    )


def centroids(forest: Forest) -> tuple[int, ...]:
    """The one or two vertices minimizing the largest component left by their removal."""
    view = root_at(forest, 0)
    n = forest.n
    size = [1] * n
    heaviest = [0] * n
    for v in view.post_order:
        p = view.parent[v]
        if p != PARENT_NONE:
            size[p] += size[v]
            heaviest[p] = max(heaviest[p], size[v])
    best = n + 1
    out = []
    for v in range(n):
        weight = max(heaviest[v], n - size[v])
        if weight < best:
            best = weight
            out = [v]
        elif weight == best:
            out.append(v)
    return tuple(out)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Relabeling-invariant identity of a tree; equal codes iff isomorphic."""

    code: bytes

    def text(self) -> str:
        return self.code.decode("ascii")


def _ahu_code(forest: Forest, root: int) -> bytes:
    view = root_at(forest, root)
    kids = view.children()
    code: list[bytes] = [b""] * forest.n
    for v in view.post_order:
        parts = sorted(code[c] for c in kids[v])
        code[v] = b"(" + b"".join(parts) + b")"
    return code[root]


def canonical_code(forest: Forest) -> CanonicalCode:
    """AHU code rooted at the centroid; for two centroids, the smaller of both codes."""
    if not forest.is_tree:
        raise ValueError("canonical codes are defined on connected trees")
    return CanonicalCode(min(_ahu_code(forest, c) for c in centroids(forest)))


def parse_edge_list(text: str) -> Forest:
    """Parse the edge-list text format into a Forest.

    Raises ParseError naming the offending line on malformed lines,
    self-loops, duplicate edges, and cycles.
    """
    index: dict[str, int] = {}
    order: list[str] = []

    def vid(token: str) -> int:
        if token not in index:
            index[token] = len(order)
            order.append(token)
        return index[token]

    edges: list[tuple[int, int]] = []
    edge_lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "vertex":
            if len(tokens) != 2:
                raise ParseError(f"line {lineno}: vertex declaration needs one label: {raw!r}")
            vid(tokens[1])
            continue
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected two labels: {raw!r}")
        u, v = vid(tokens[0]), vid(tokens[1])
        if u == v:
            raise ParseError(f"line {lineno}: self-loop: {raw!r}")
        edges.append((u, v))
        edge_lines.append(lineno)

    n = len(order)
    uf = list(range(n))

    def find(x: int) -> int:
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    seen: set[tuple[int, int]] = set()
    for (u, v), lineno in zip(edges, edge_lines):
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise ParseError(f"line {lineno}: duplicate edge {order[u]} {order[v]}")
        ru, rv = find(u), find(v)
        if ru == rv:
            raise ParseError(f"line {lineno}: cycle through edge {order[u]} {order[v]}")
        uf[ru] = rv
        seen.add(e)
    return Forest.from_edges(n, edges, labels=tuple(order))


def serialize_edge_list(forest: Forest) -> str:
    """Canonical text: edges sorted by (min, max) index, isolated vertices declared."""
    items: list[tuple[tuple[int, ...], str]] = [
        (e, f"{e[0]} {e[1]}") for e in forest.edges
    ]
    for v in range(forest.n):
        if not forest.adjacency[v]:
            items.append(((v,), f"vertex {v}"))
    items.sort(key=lambda kv: kv[0])
    if not items:
        return ""
    return "\n".join(line for _, line in items) + "\n"


def normalize_indices(forest: Forest) -> Forest:
    """Relabel by per-component BFS so serialization round-trips through parsing."""
    seen = [False] * forest.n
    order: list[int] = []
    for start in range(forest.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in forest.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    new_of_old = {old: new for new, old in enumerate(order)}
    edges = [(new_of_old[u], new_of_old[v]) for u, v in forest.edges]
    labels = None
    if forest.labels is not None:
        labels = tuple(forest.labels[old] for old in order)
    return Forest.from_edges(forest.n, edges, labels=labels)
