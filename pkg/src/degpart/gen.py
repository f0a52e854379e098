"""Graph generators: Erdos-Renyi, the set-inclusion bipartite family, and
complete bipartite graphs, plus small fixed shapes for tests and demos.
All randomized generators are deterministic given their seed.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .graph import Graph


def gen_gnp(n: int, p: float, seed: int = 0) -> Graph:
    """G(n, p): every unordered pair is an edge independently with prob p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0,1], got {p}")
    rng = np.random.default_rng(seed)
    edges = []
    for i in range(n - 1):
        hits = np.nonzero(rng.random(n - 1 - i) < p)[0]
        for j in hits.tolist():
            edges.append((i, i + 1 + j))
    return Graph.from_edges(n, edges)


def gen_kuhn_osthus(n: int, l: int, max_vertices: int = 2_000_000) -> Graph:
    """Bipartite graph on X = {0..n-1} and one vertex per l-subset of X.

    Vertex n + k is the k-th l-subset in lexicographic order and is adjacent
    exactly to its elements.  X-side degrees are C(n-1, l-1), subset-side
    degrees are l, so the minimum degree is l (for l <= C(n-1, l-1)).
    This family separates own-part floors from cross floors: for large n it
    admits no bisection giving every vertex an own-part neighbor and every
    vertex of one side a cross neighbor.
    """
    if not 1 <= l <= n:
        raise ValueError(f"need 1 <= l <= n, got l={l}, n={n}")
    total = n + comb(n, l)
    if total > max_vertices:
        raise ValueError(f"graph would have {total} vertices (cap {max_vertices})")
    edges = []
    for k, subset in enumerate(combinations(range(n), l)):
        vf = n + k
        for i in subset:
            edges.append((i, vf))
    return Graph.from_edges(total, edges)


def gen_complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}: parts {0..a-1} and {a..a+b-1}, all cross edges."""
    if a < 1 or b < 1:
        raise ValueError("both sides need at least one vertex")
    edges = [(i, a + j) for i in range(a) for j in range(b)]
    return Graph.from_edges(a + b, edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
