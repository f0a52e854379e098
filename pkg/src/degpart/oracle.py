"""Brute-force ground truth on small instances.

``best_bisection`` enumerates every bisection of a graph with at most 24
vertices and returns the exact maximin value of a per-vertex degree
statistic, with one witness partition.  Enumeration walks fixed-size subsets
in revolving-door order (one vertex swapped in, one out per step) so the
per-vertex counts update incrementally.

``ko_bisection_exists`` answers, by exhaustion, whether the set-inclusion
bipartite graph admits a bisection in which every vertex has k own-part
neighbors and every vertex of one side has k cross neighbors.

``dense_fixed_point_check`` confirms that greedy dense extraction lands on
the unique maximal fixed point, by unioning all valid subsets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, inf

import numpy as np

from .dense import ClassFamily, extract_dense
from .gen import gen_kuhn_osthus
from .graph import Graph

MAX_ORACLE_N = 24

OBJECTIVES = ("min-own-degree", "min-cross-degree", "min-own-ratio",
              "min-cross-ratio")


def _subset_walk(n: int, k: int):
    """Walk all k-subsets of range(n), yielding the swaps between successive
    subsets.  Lexicographic order changes only a suffix per step, so the
    amortized number of (out, in) exchanges per subset is a small constant."""
    prev: tuple[int, ...] | None = None
    for comb_t in combinations(range(n), k):
        if prev is None:
            yield comb_t, None
        else:
            gone = [x for x in prev if x not in comb_t]
            came = [x for x in comb_t if x not in prev]
            yield comb_t, list(zip(gone, came))
        prev = comb_t


def _objective_value(objective: str, own: np.ndarray, deg: np.ndarray):
    if objective == "min-own-degree":
        return int(own.min()) if len(own) else 0
    if objective == "min-cross-degree":
        return int((deg - own).min()) if len(own) else 0
    pos = deg > 0
    if not pos.any():
        return inf  # min over an empty set of constrained vertices
    num = own[pos] if objective == "min-own-ratio" else (deg - own)[pos]
    return min(Fraction(int(a), int(b))
               for a, b in zip(num.tolist(), deg[pos].tolist()))


def best_bisection(graph: Graph, objective: str):
    """Exact maximin over all bisections; returns (value, witness labels).

    value is an int for degree objectives and a Fraction for ratio
    objectives (inf when no vertex has positive degree).  Graphs above 24
    vertices are refused.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}")
    n = graph.n
    if n > MAX_ORACLE_N:
        raise ValueError(f"oracle enumerates bisections only up to n={MAX_ORACLE_N}")
    if n < 2:
        raise ValueError("a bisection needs at least 2 vertices")
    k = n // 2
    deg = graph.degree
    # own-degree counts for the current subset-as-part-0, updated per swap
    side = np.zeros(n, dtype=np.int64)   # 1 = in part 0
    own = np.zeros(n, dtype=np.int64)    # neighbors on one's own side

    def apply_swap(v: int, enter: bool):
        # v switches sides; neighbors on its new side gain a same-side
        # neighbor, those on its old side lose one
        nb = graph.neighbors(v)
        side[v] = 1 if enter else 0
        for w in nb.tolist():
            if side[w] == side[v]:
                own[w] += 1
            else:
                own[w] -= 1
        same = int(side[nb].sum())
        own[v] = same if enter else len(nb) - same

    best_val = None
    best_labels = None
    first = True
    for subset, swaps in _subset_walk(n, k):
        if first:
            side[:] = 0
            side[list(subset)] = 1
            for v in range(n):
                nb = graph.neighbors(v)
                same = side[nb] == side[v]
                own[v] = int(same.sum())
            first = False
        else:
            for out_v, in_v in swaps:
                apply_swap(out_v, False)
                apply_swap(in_v, True)
        val = _objective_value(objective, own, deg)
        if best_val is None or val > best_val:
            best_val = val
            best_labels = (1 - side).copy()  # part 0 label 0
    return best_val, best_labels


def ko_bisection_exists(n: int, l: int, k: int, max_total: int = MAX_ORACLE_N):
    """Exhaustively test the joint own/cross floor on the inclusion graph.

    Builds the bipartite graph on [n] and its l-subsets and searches all
    bisections A|B for one where every vertex has at least k neighbors in its
    own part and every vertex of A has at least k neighbors in B (both
    orientations of each split are tried).  Returns a dict with ``exists``,
    a ``witness`` labeling (or None) and ``refuted`` = number of oriented
    splits checked when none works.
    """
    total = n + comb(n, l)
    if total > max_total:
        raise ValueError(f"{total} vertices exceed the oracle bound {max_total}")
    graph = gen_kuhn_osthus(n, l)
    nv = graph.n
    if k == 0:
        labels = np.zeros(nv, dtype=np.int64)
        labels[nv // 2:] = 1
        return {"exists": True, "witness": labels.tolist(), "refuted": 0,
                "n": n, "l": l, "k": k}
    half = nv // 2
    checked = 0
    for subset in combinations(range(nv), half):
        labels = np.ones(nv, dtype=np.int64)
        labels[list(subset)] = 0
        own = np.empty(nv, dtype=np.int64)
        for v in range(nv):
            nb = graph.neighbors(v)
            own[v] = int((labels[nb] == labels[v]).sum())
        if (own < k).any():
            checked += 2
            continue
        cross = graph.degree - own
        # orientation 1: A = part 0 needs k cross; orientation 2: A = part 1
        for a_part in (0, 1):
            checked += 1
            if not (cross[labels == a_part] < k).any():
                return {"exists": True, "witness": labels.tolist(),
                        "a_part": a_part, "refuted": 0, "n": n, "l": l, "k": k}
    return {"exists": False, "witness": None, "refuted": checked,
            "n": n, "l": l, "k": k}


def dense_fixed_point_check(graph: Graph, family: ClassFamily,
                            max_host: int = 15) -> bool:
    """Greedy extraction equals the unique maximal valid subset.

    A subset S of the host is valid when every classed vertex in S has at
    least its target degree inside S.  Valid subsets are closed under union,
    so the maximal one is the union of all of them; hosts above ``max_host``
    vertices are refused.
    """
    mask = family.host_mask(graph.n)
    host = np.nonzero(mask)[0]
    if len(host) > max_host:
        raise ValueError(f"host has {len(host)} vertices (cap {max_host})")
    class_of = {}
    target_of = {}
    for cl in family.classes:
        for v in cl.vertices.tolist():
            class_of[v] = cl
            target_of[v] = cl.target
    best: set[int] = set()
    host_list = host.tolist()
    for size in range(len(host_list) + 1):
        for sub in combinations(host_list, size):
            s = set(sub)
            ok = True
            for v in sub:
                if v in target_of:
                    d = sum(1 for w in graph.neighbors(v).tolist() if w in s)
                    if d < target_of[v]:
                        ok = False
                        break
            if ok:
                best |= s
    result = extract_dense(graph, family)
    return set(result.surviving.tolist()) == best
