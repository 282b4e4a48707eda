"""Undirected simple graphs with one designated root per component.

Vertices are 0..n-1.  Graphs are immutable after construction; generators and
the Erdos-Renyi sampler are pure functions of their arguments, so equal seeds
give equal graphs.
"""
from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

# One uniform draw per vertex pair; the block size only affects batching, not
# the values drawn, because the generator consumes its stream sequentially.
_ER_BLOCK = 1 << 22


class ComponentInfo(NamedTuple):
    parts: tuple[tuple[int, ...], ...]
    count: int
    giant_size: int


def _lowest_index_roots(n: int, edges: set[tuple[int, int]]) -> tuple[int, ...]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            # keep the smaller index as representative
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    return tuple(sorted({find(v) for v in range(n)}))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph plus a chosen root in every component."""

    n: int
    edges: frozenset[tuple[int, int]]
    roots: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")
        comp = self.component_of
        seen = set()
        for r in self.roots:
            if not (0 <= r < self.n):
                raise ValueError(f"root {r} out of range")
            if comp[r] in seen:
                raise ValueError("more than one root in a component")
            seen.add(comp[r])
        if len(seen) != self.component_count:
            raise ValueError("every component needs a root")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   roots: Iterable[int] | None = None) -> "Graph":
        """Build a graph, normalising edge order and defaulting roots.

        The default root of each component is its lowest-index vertex, which
        makes graphs a pure function of (n, edges).
        """
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad edge ({u}, {v}) for n={n}")
            norm.add((u, v) if u < v else (v, u))
        if roots is None:
            roots = _lowest_index_roots(n, norm)
        return cls(n, frozenset(norm), tuple(roots))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def component_of(self) -> tuple[int, ...]:
        """Component label per vertex; labels are ordered by smallest member."""
        label = [-1] * self.n
        k = 0
        for s in range(self.n):
            if label[s] >= 0:
                continue
            queue = deque([s])
            label[s] = k
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if label[w] < 0:
                        label[w] = k
                        queue.append(w)
            k += 1
        return tuple(label)

    @property
    def component_count(self) -> int:
        return max(self.component_of) + 1

    def components(self) -> ComponentInfo:
        parts = [[] for _ in range(self.component_count)]
        for v, c in enumerate(self.component_of):
            parts[c].append(v)
        parts = tuple(tuple(p) for p in parts)
        return ComponentInfo(parts, len(parts), max(len(p) for p in parts))

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def add_edge(self, u: int, v: int) -> "Graph":
        """New graph with one extra edge; roots revert to the canonical rule."""
        if u == v:
            raise ValueError(f"self-loop at {u}")
        e = (u, v) if u < v else (v, u)
        return Graph.from_edges(self.n, self.edges | {e})

    def with_roots(self, roots: Iterable[int]) -> "Graph":
        return Graph(self.n, self.edges, tuple(roots))

    def root_of_component(self, c: int) -> int:
        for r in self.roots:
            if self.component_of[r] == c:
                return r
        raise ValueError(f"no root for component {c}")


def components(graph: Graph) -> ComponentInfo:
    """Vertex partition into connected components with count and giant size."""
    return graph.components()


def make_grid(m: int, n: int) -> Graph:
    """Grid graph with m rows and n columns; vertex (r, c) is r*n + c."""
    if m < 1 or n < 1:
        raise ValueError("grid dimensions must be at least 1")
    edges = []
    for r in range(m):
        for c in range(n):
            v = r * n + c
            if c + 1 < n:
                edges.append((v, v + 1))
            if r + 1 < m:
                edges.append((v, v + n))
    return Graph.from_edges(m * n, edges)


def make_family(kind: str, n: int) -> Graph:
    """Named graph (path | cycle | complete | star) on vertices 0..n-1."""
    if n < 1:
        raise ValueError("size must be at least 1")
    if kind == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "cycle":
        if n < 3:
            raise ValueError("cycle needs at least 3 vertices")
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif kind == "complete":
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif kind == "star":
        edges = [(0, i) for i in range(1, n)]
    else:
        raise ValueError(f"unknown family {kind!r}")
    return Graph.from_edges(n, edges)


def _pairs_from_linear(t: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Invert the lexicographic linear index of pairs (i, j), i < j."""
    # F(i) = number of pairs whose first vertex is < i.
    def first_count(i):
        return i * (2 * n - i - 1) // 2

    tt = t.astype(np.float64)
    disc = (2 * n - 1) ** 2 - 8.0 * tt
    i = np.floor((2 * n - 1 - np.sqrt(disc)) / 2).astype(np.int64)
    i = np.clip(i, 0, n - 2)
    # float sqrt can be off by one either way
    i = np.where(first_count(i + 1) <= t, i + 1, i)
    i = np.where(first_count(i) > t, i - 1, i)
    j = t - first_count(i) + i + 1
    return i, j


def sample_er(n: int, d: float, seed: int) -> Graph:
    """Erdos-Renyi graph: each pair present independently with probability d/n.

    Pairs are visited in lexicographic order with one uniform draw per pair,
    so the result is a pure function of (n, d, seed).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if d < 0 or d > n:
        raise ValueError("need 0 <= d <= n so the edge probability is in [0, 1]")
    p = d / n
    rng = np.random.default_rng(seed)
    total = n * (n - 1) // 2
    edges: list[tuple[int, int]] = []
    start = 0
    while start < total:
        size = min(_ER_BLOCK, total - start)
        hit = np.flatnonzero(rng.random(size) < p)
        if hit.size:
            i, j = _pairs_from_linear(hit + start, n)
            edges.extend(zip(i.tolist(), j.tolist()))
        start += size
    return Graph.from_edges(n, edges)


def to_edgelist_str(graph: Graph) -> str:
    """Plain-text format: first line "n k", then one sorted "u v" line per edge."""
    lines = [f"{graph.n} {graph.component_count}"]
    lines.extend(f"{u} {v}" for u, v in sorted(graph.edges))
    return "\n".join(lines) + "\n"


def from_edgelist_str(text: str) -> Graph:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise ValueError("first line must be 'n k'")
    n, k = (int(x) for x in rows[0])
    seen = set()
    edges = []
    for row in rows[1:]:
        if len(row) != 2:
            raise ValueError(f"bad edge line {' '.join(row)!r}")
        u, v = int(row[0]), int(row[1])
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise ValueError(f"duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    g = Graph.from_edges(n, edges)
    if g.component_count != k:
        raise ValueError(f"file claims {k} components, graph has {g.component_count}")
    return g


def write_edgelist(graph: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(to_edgelist_str(graph))


def read_edgelist(path) -> Graph:
    with open(path) as fh:
        return from_edgelist_str(fh.read())


def graph_hash(graph: Graph) -> str:
    """Stable content hash of the canonical edge-list text."""
    return hashlib.sha256(to_edgelist_str(graph).encode()).hexdigest()[:16]
