"""Shared test utilities: random trees, tiny-graph isomorphism."""
from itertools import permutations

import numpy as np

from lipgrowth.graphs import Graph


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    """Uniform random labelled tree from a random Prufer sequence."""
    if n == 1:
        return Graph.from_edges(1, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    leaves = sorted(v for v in range(n) if degree[v] == 1)
    for v in seq:
        leaf = leaves.pop(0)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            import bisect
            bisect.insort(leaves, v)
    edges.append((leaves[0], leaves[1]))
    return Graph.from_edges(n, edges)


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Exhaustive isomorphism test; only for very small graphs."""
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    e2 = g2.edges
    for perm in permutations(range(g1.n)):
        ok = True
        for u, v in g1.edges:
            a, b = perm[u], perm[v]
            if ((a, b) if a < b else (b, a)) not in e2:
                ok = False
                break
        if ok:
            return True
    return False


def connected_fixture_graphs(max_n: int = 6) -> list[Graph]:
    """Deterministic mix of sparse and dense small connected graphs."""
    from lipgrowth.graphs import make_family, make_grid
    out = [
        make_family("path", 2),
        make_family("path", 5),
        make_family("star", 5),
        make_family("cycle", 5),
        make_family("complete", 4),
        make_grid(2, 3),
    ]
    rng = np.random.default_rng(42)
    tree = random_tree(6, rng)
    out.append(tree.add_edge(0, 5) if (0, 5) not in tree.edges else tree)
    return [g for g in out if g.n <= max_n]
