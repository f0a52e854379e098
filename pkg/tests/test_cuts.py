from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degpart.cuts import (BiasVector, biased_max_r_cut, check_biased_local_min,
                          check_flip_local_optimum, local_maxcut)
from degpart.gen import complete_graph, cycle_graph, gen_gnp
from degpart.graph import Graph, part_profile

from conftest import graphs

PETERSEN = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)]


def test_local_maxcut_c4_reaches_proper_bipartition():
    g = cycle_graph(4)
    plus, minus, _ = local_maxcut(g, seed=0)
    assert check_flip_local_optimum(g, plus, minus) == []
    side = np.zeros(4, dtype=int)
    side[minus] = 1
    counts = part_profile(g, side, 2)
    own = counts[np.arange(4), side]
    assert own.tolist() == [0, 0, 0, 0]


def test_local_maxcut_k3_every_split_is_local_opt():
    g = complete_graph(3)
    for seed in range(5):
        plus, minus, _ = local_maxcut(g, seed=seed)
        assert check_flip_local_optimum(g, plus, minus) == []
        assert sorted((len(plus), len(minus))) == [1, 2]


def test_local_maxcut_petersen_invariant_all_seeds():
    g = Graph.from_edges(10, PETERSEN)
    for seed in range(8):
        plus, minus, _ = local_maxcut(g, seed=seed)
        assert check_flip_local_optimum(g, plus, minus) == []


def test_local_maxcut_empty_and_subset():
    g = complete_graph(6)
    plus, minus, flips = local_maxcut(g, subset=[], seed=0)
    assert len(plus) == 0 and len(minus) == 0 and flips == 0
    plus, minus, _ = local_maxcut(g, subset=[0, 2, 4, 5], seed=1)
    assert sorted(np.concatenate([plus, minus]).tolist()) == [0, 2, 4, 5]
    assert check_flip_local_optimum(g, plus, minus) == []


def test_bias_vector_validation():
    BiasVector((Fraction(1, 2), Fraction(1, 2)))
    BiasVector(("1/5", "3/10", "1/2"))
    with pytest.raises(ValueError):
        BiasVector((Fraction(1, 2), Fraction(1, 3)))  # sums to 5/6
    with pytest.raises(ValueError):
        BiasVector((Fraction(0), Fraction(1)))  # entries must be in (0,1)
    with pytest.raises(ValueError):
        BiasVector((0.5, 0.5001))
    assert not BiasVector((0.5, 0.5)).exact
    assert BiasVector(("1/2", "1/2")).exact


def test_bias_weights_integer_scaling():
    bv = BiasVector((Fraction(2, 3), Fraction(1, 3)))
    assert bv.weights() == [3, 6]  # lcm(2,1)=2; 2*(3/2)=3, 2*(3/1)=6


def test_biased_cut_c4_half_half():
    g = cycle_graph(4)
    bv = BiasVector((Fraction(1, 2), Fraction(1, 2)))
    res = biased_max_r_cut(g, bv, seed=3)
    assert check_biased_local_min(g, res.labels, bv) == []
    assert res.objective_end <= res.objective_start


def test_biased_cut_k3_lopsided():
    g = complete_graph(3)
    bv = BiasVector((Fraction(2, 3), Fraction(1, 3)))
    res = biased_max_r_cut(g, bv, seed=0)
    # every nontrivial 2-partition of K3 is a 2|1 split with one inner edge
    # in the pair part: scaled objective = w_0 * 1 = 3 or w_1 * 1 = 6
    assert res.objective_end in (3, 6)
    assert check_biased_local_min(g, res.labels, bv) == []


def test_biased_cut_rejects_r_above_n():
    g = complete_graph(2)
    with pytest.raises(ValueError):
        biased_max_r_cut(g, BiasVector(("1/3", "1/3", "1/3")), seed=0)


def test_biased_cut_singleton_part_trivially_fine():
    g = complete_graph(5)
    bv = BiasVector((Fraction(9, 10), Fraction(1, 10)))
    res = biased_max_r_cut(g, bv, seed=1)
    assert check_biased_local_min(g, res.labels, bv) == []


BIASES = [
    (Fraction(1, 2), Fraction(1, 2)),
    (Fraction(2, 3), Fraction(1, 3)),
    (Fraction(1, 5), Fraction(3, 10), Fraction(1, 2)),
]


@settings(max_examples=50, deadline=None)
@given(graphs(min_n=3, max_n=14), st.sampled_from(BIASES), st.integers(0, 5))
def test_biased_cut_exact_invariants(g, alpha, seed):
    bv = BiasVector(alpha)
    if bv.r > g.n:
        return
    res = biased_max_r_cut(g, bv, seed=seed)
    assert check_biased_local_min(g, res.labels, bv) == []
    counts = part_profile(g, res.labels, bv.r)
    # d_own(x) <= alpha_i * d(x) for every x, exactly (cross-multiplied)
    for v in range(g.n):
        i = int(res.labels[v])
        own = int(counts[v, i])
        assert own * bv.alpha[i].denominator <= \
            bv.alpha[i].numerator * int(g.degree[v])


@settings(max_examples=30, deadline=None)
@given(graphs(min_n=3, max_n=12), st.integers(0, 3))
def test_biased_cut_maximize_gives_own_floor(g, seed):
    bv = BiasVector((Fraction(1, 2), Fraction(1, 2)))
    res = biased_max_r_cut(g, bv, seed=seed, maximize=True)
    assert check_biased_local_min(g, res.labels, bv, maximize=True) == []
    counts = part_profile(g, res.labels, 2)
    sizes = np.bincount(res.labels, minlength=2)
    for v in range(g.n):
        i = int(res.labels[v])
        if sizes[i] >= 2:
            assert 2 * counts[v, i] >= g.degree[v]  # own >= d/2 at alpha=1/2


def test_biased_half_half_matches_flip_invariant():
    g = gen_gnp(40, 0.2, seed=5)
    bv = BiasVector((Fraction(1, 2), Fraction(1, 2)))
    res = biased_max_r_cut(g, bv, seed=7)
    counts = part_profile(g, res.labels, 2)
    own = counts[np.arange(g.n), res.labels]
    cross = g.degree - own
    sizes = np.bincount(res.labels, minlength=2)
    movable = sizes[res.labels] >= 2
    assert (cross[movable] >= own[movable]).all()
