"""Shared strategies and helpers for the test suite."""

from itertools import combinations

from hypothesis import strategies as st

from degpart.graph import Graph


@st.composite
def graphs(draw, min_n=2, max_n=12, min_edges=0):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True,
                          min_size=min(min_edges, len(pairs)),
                          max_size=len(pairs)))
    return Graph.from_edges(n, edges)


def random_graph(n, p, seed):
    from degpart.gen import gen_gnp
    return gen_gnp(n, p, seed)


def naive_profile(graph, labels, r):
    """Independent per-vertex part-degree counts, pure python."""
    counts = [[0] * r for _ in range(graph.n)]
    for v in range(graph.n):
        for w in graph.neighbors(v).tolist():
            counts[v][labels[w]] += 1
    return counts
