from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from degpart.dense import ClassFamily, DegreeClass
from degpart.gen import complete_graph, cycle_graph, gen_gnp, gen_kuhn_osthus
from degpart.graph import Graph, part_profile
from degpart.oracle import (best_bisection, dense_fixed_point_check,
                            ko_bisection_exists)


def brute_force_value(graph, objective):
    """Independent reference: direct enumeration without incremental updates."""
    n = graph.n
    best = None
    for subset in combinations(range(n), n // 2):
        labels = np.ones(n, dtype=np.int64)
        labels[list(subset)] = 0
        counts = part_profile(graph, labels, 2)
        own = counts[np.arange(n), labels]
        cross = graph.degree - own
        if objective == "min-own-degree":
            val = int(own.min())
        elif objective == "min-cross-degree":
            val = int(cross.min())
        else:
            pos = graph.degree > 0
            col = own if objective == "min-own-ratio" else cross
            if not pos.any():
                val = float("inf")
            else:
                val = min(Fraction(int(a), int(b))
                          for a, b in zip(col[pos], graph.degree[pos]))
        if best is None or val > best:
            best = val
    return best


def test_k4_min_own_degree():
    val, witness = best_bisection(complete_graph(4), "min-own-degree")
    assert val == 1
    assert np.bincount(witness, minlength=2).tolist() == [2, 2]


def test_c5_objectives():
    c5 = cycle_graph(5)
    assert best_bisection(c5, "min-own-degree")[0] == 1
    assert best_bisection(c5, "min-cross-degree")[0] == 1


def test_k2_min_own_is_zero():
    assert best_bisection(complete_graph(2), "min-own-degree")[0] == 0


def test_size_bound_and_validation():
    with pytest.raises(ValueError):
        best_bisection(gen_gnp(25, 0.1, 0), "min-own-degree")
    with pytest.raises(ValueError):
        best_bisection(complete_graph(4), "nonsense")


def test_matches_independent_enumeration():
    for seed in range(6):
        g = gen_gnp(8, 0.4, seed=seed)
        for obj in ("min-own-degree", "min-cross-degree", "min-own-ratio",
                    "min-cross-ratio"):
            assert best_bisection(g, obj)[0] == brute_force_value(g, obj)


def test_witness_achieves_value_and_swap_symmetry():
    g = gen_gnp(9, 0.5, seed=3)
    val, witness = best_bisection(g, "min-own-degree")
    counts = part_profile(g, witness, 2)
    own = counts[np.arange(g.n), witness]
    assert int(own.min()) == val
    swapped = 1 - witness
    counts2 = part_profile(g, swapped, 2)
    own2 = counts2[np.arange(g.n), swapped]
    assert int(own2.min()) == val


def test_ko_k_zero_trivially_exists():
    assert ko_bisection_exists(4, 2, 0)["exists"] is True


def test_ko_4_2_1_matches_direct_search():
    answer = ko_bisection_exists(4, 2, 1)
    g = gen_kuhn_osthus(4, 2)
    n = g.n
    found = False
    for subset in combinations(range(n), n // 2):
        labels = np.ones(n, dtype=np.int64)
        labels[list(subset)] = 0
        counts = part_profile(g, labels, 2)
        own = counts[np.arange(n), labels]
        cross = g.degree - own
        if (own >= 1).all() and (
                not (cross[labels == 0] < 1).any()
                or not (cross[labels == 1] < 1).any()):
            found = True
            break
    assert answer["exists"] == found


def test_ko_size_bound():
    with pytest.raises(ValueError):
        ko_bisection_exists(7, 2, 1)  # 7 + 21 = 28 vertices > cap 24


def test_dense_fixed_point_examples():
    k5 = complete_graph(5)
    fam = ClassFamily((DegreeClass(np.arange(5), 1, Fraction(1)),))
    assert dense_fixed_point_check(k5, fam)
    g = Graph.from_edges(3, [(0, 1)])
    fam2 = ClassFamily((DegreeClass(np.array([2]), 1, Fraction(1)),))
    assert dense_fixed_point_check(g, fam2)


def test_dense_fixed_point_random_instances():
    for seed in range(5):
        g = gen_gnp(10, 0.35, seed=seed)
        rng = np.random.default_rng(seed)
        members = rng.choice(10, size=4, replace=False)
        fam = ClassFamily((DegreeClass(members, int(rng.integers(1, 3)),
                                       Fraction(1, 2)),))
        assert dense_fixed_point_check(g, fam)


def test_dense_fixed_point_size_cap():
    g = gen_gnp(16, 0.2, seed=0)
    fam = ClassFamily((DegreeClass(np.array([0]), 1, Fraction(1)),))
    with pytest.raises(ValueError):
        dense_fixed_point_check(g, fam)
