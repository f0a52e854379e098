"""Flip-based local search for max-cut and the biased max-r-cut.

``local_maxcut`` drives a bipartition of a vertex subset to a flip local
optimum, where every vertex has at least as many neighbors across the cut as
on its own side (hence cross-degree >= ceil(own-subgraph-degree / 2)).

``biased_max_r_cut`` minimizes f(U_1..U_r) = sum_i e(U_i)/alpha_i over
nontrivial r-partitions by single-vertex moves.  At a local minimum, for
every x in U_i and every j != i reachable by a legal move (|U_i| >= 2),

    d_{U_i}(x)/alpha_i <= d_{U_j}(x)/alpha_j,

and summing over j gives d_{U_i}(x) <= alpha_i * d_G(x).  When the bias
vector is given as rationals, all comparisons run in exact integer
arithmetic (weights scaled to a common denominator), so the local-optimum
certificate is independent of float rounding; float biases fall back to a
1e-12 relative guard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, LabeledPartition, part_profile

FLOAT_GUARD = 1e-12


@dataclass(frozen=True)
class BiasVector:
    """Part-size biases alpha_1..alpha_r, each in (0,1), summing to 1."""

    alpha: tuple

    def __post_init__(self):
        vals = tuple(Fraction(a) if isinstance(a, (Fraction, int, str)) else a
                     for a in self.alpha)
        object.__setattr__(self, "alpha", vals)
        if len(vals) < 2:
            raise ValueError("need at least 2 parts")
        for a in vals:
            if not 0 < a < 1:
                raise ValueError(f"bias entries must lie in (0,1), got {a}")
        if self.exact:
            if sum(vals) != 1:
                raise ValueError(f"rational biases must sum to 1, got {sum(vals)}")
        elif abs(float(sum(float(a) for a in vals)) - 1.0) > FLOAT_GUARD:
            raise ValueError("biases must sum to 1 within 1e-12")

    @property
    def r(self) -> int:
        return len(self.alpha)

    @property
    def exact(self) -> bool:
        return all(isinstance(a, Fraction) for a in self.alpha)

    def weights(self):
        """Per-part move weights w_i proportional to 1/alpha_i.

        Rational biases yield exact integer weights (scaled by the lcm of the
        numerators); float biases yield float weights.
        """
        if self.exact:
            lcm = 1
            for a in self.alpha:
                lcm = lcm * a.numerator // math.gcd(lcm, a.numerator)
            return [lcm * a.denominator // a.numerator for a in self.alpha]
        return [1.0 / float(a) for a in self.alpha]

    def as_floats(self) -> list[float]:
        return [float(a) for a in self.alpha]


def _balanced_random_split(ids: np.ndarray, r: int, rng) -> np.ndarray:
    """Labels in [0,r) aligned with ids, sizes as equal as possible."""
    k = len(ids)
    chunk_labels = np.empty(k, dtype=np.int64)
    base, extra = divmod(k, r)
    start = 0
    for j in range(r):
        size = base + (1 if j < extra else 0)
        chunk_labels[start:start + size] = j
        start += size
    out = np.empty(k, dtype=np.int64)
    out[rng.permutation(k)] = chunk_labels
    return out


def local_maxcut(graph: Graph, subset=None, seed: int = 0):
    """Flip local search for max-cut on G[S].

    Returns (plus_ids, minus_ids, flips).  At exit every x in S satisfies
    d_cross(x) >= d_own(x) within G[S] (exact integer comparison), hence
    d_cross(x) >= ceil(d_{G[S]}(x)/2).  Empty S returns two empty parts.
    """
    if subset is None:
        ids = np.arange(graph.n, dtype=np.int64)
    else:
        ids = np.unique(np.asarray(subset, dtype=np.int64))
    if len(ids) == 0:
        return ids.copy(), ids.copy(), 0
    rng = np.random.default_rng(seed)
    side = np.full(graph.n, -1, dtype=np.int64)
    side[ids] = _balanced_random_split(ids, 2, rng)
    in_s = np.zeros(graph.n, dtype=bool)
    in_s[ids] = True

    own = np.zeros(graph.n, dtype=np.int64)
    cross = np.zeros(graph.n, dtype=np.int64)
    for v in ids.tolist():
        for w in graph.neighbors(v).tolist():
            if in_s[w]:
                if side[w] == side[v]:
                    own[v] += 1
                else:
                    cross[v] += 1

    flips = 0
    improved = True
    while improved:
        improved = False
        for v in ids.tolist():
            if own[v] > cross[v]:
                sv = side[v]
                side[v] = 1 - sv
                own[v], cross[v] = cross[v], own[v]
                for w in graph.neighbors(v).tolist():
                    if in_s[w]:
                        if side[w] == sv:       # was same side, now across
                            own[w] -= 1
                            cross[w] += 1
                        else:
                            own[w] += 1
                            cross[w] -= 1
                flips += 1
                improved = True
    plus = ids[side[ids] == 0]
    minus = ids[side[ids] == 1]
    return plus, minus, flips


@dataclass
class RCutResult:
    labels: np.ndarray
    objective_start: object
    objective_end: object
    moves: int
    exact: bool

    def partition(self, r: int) -> LabeledPartition:
        return LabeledPartition(r, self.labels)


def biased_max_r_cut(graph: Graph, bias: BiasVector, seed: int = 0,
                     maximize: bool = False) -> RCutResult:
    """Single-vertex-move local optimum of f = sum_i e(U_i)/alpha_i.

    Default minimizes f over nontrivial r-partitions (moves that would empty
    a part are forbidden); at the local minimum the cross-multiplied ratio
    inequalities of the module docstring hold.  maximize=True reverses the
    objective (used for internal-degree r-partitions: at a local maximum
    d_{U_i}(x) >= alpha_i*d_G(x) for every x in a part with >= 2 vertices).

    The initial partition is a balanced random split from the seed; f strictly
    improves at every accepted move, so the search terminates.
    """
    r = bias.r
    if r > graph.n:
        raise ValueError(f"r={r} parts need at least r vertices, got n={graph.n}")
    rng = np.random.default_rng(seed)
    ids = np.arange(graph.n, dtype=np.int64)
    labels = _balanced_random_split(ids, r, rng)
    w = bias.weights()
    counts = part_profile(graph, labels, r)
    part_size = np.bincount(labels, minlength=r)

    def objective():
        # sum over parts of w_i * e(U_i), with e(U_i) half the own-degree sum
        tot = 0 if bias.exact else 0.0
        for j in range(r):
            tot += w[j] * int(counts[labels == j, j].sum())
        return tot // 2 if bias.exact else tot / 2.0

    f0 = objective()
    f_cur = f0
    moves = 0
    sign = -1 if maximize else 1

    improved = True
    while improved:
        improved = False
        for v in range(graph.n):
            i = int(labels[v])
            if part_size[i] < 2:
                continue  # move would empty the part
            di = int(counts[v, i])
            cost_i = w[i] * di
            for j in range(r):
                if j == i:
                    continue
                dj = int(counts[v, j])
                cost_j = w[j] * dj
                if bias.exact:
                    better = cost_j < cost_i if not maximize else cost_j > cost_i
                else:
                    guard = FLOAT_GUARD * max(1.0, abs(cost_i))
                    better = (cost_j < cost_i - guard) if not maximize \
                        else (cost_j > cost_i + guard)
                if better:
                    labels[v] = j
                    part_size[i] -= 1
                    part_size[j] += 1
                    for u in graph.neighbors(v).tolist():
                        counts[u, i] -= 1
                        counts[u, j] += 1
                    delta = cost_j - cost_i
                    f_new = f_cur + delta
                    # f must strictly improve in the chosen direction
                    if bias.exact:
                        assert sign * (f_new - f_cur) < 0
                    f_cur = f_new
                    moves += 1
                    improved = True
                    break
    return RCutResult(labels, f0, f_cur, moves, bias.exact)


def check_flip_local_optimum(graph: Graph, plus: np.ndarray, minus: np.ndarray) -> list[int]:
    """Vertices violating d_cross >= d_own within G[plus ∪ minus] (empty if OK)."""
    in_s = np.zeros(graph.n, dtype=bool)
    side = np.zeros(graph.n, dtype=np.int64)
    in_s[plus] = True
    in_s[minus] = True
    side[minus] = 1
    bad = []
    for v in np.concatenate([plus, minus]).tolist():
        own = cross = 0
        for wv in graph.neighbors(v).tolist():
            if in_s[wv]:
                if side[wv] == side[v]:
                    own += 1
                else:
                    cross += 1
        if cross < own:
            bad.append(v)
    return bad


def check_biased_local_min(graph: Graph, labels: np.ndarray, bias: BiasVector,
                           maximize: bool = False) -> list[tuple]:
    """Violations of the ratio inequalities at a claimed local optimum.

    For each x in U_i with |U_i| >= 2 and each j != i, checks
    alpha_j * d_{U_i}(x) <= alpha_i * d_{U_j}(x) (reversed under maximize).
    Rational biases are compared exactly.  Returns a list of
    (vertex, i, j, d_i, d_j) violations; empty means certified.
    """
    r = bias.r
    counts = part_profile(graph, labels, r)
    sizes = np.bincount(labels, minlength=r)
    alpha = bias.alpha if bias.exact else bias.as_floats()
    bad = []
    for v in range(graph.n):
        i = int(labels[v])
        if sizes[i] < 2:
            continue
        di = int(counts[v, i])
        for j in range(r):
            if j == i:
                continue
            dj = int(counts[v, j])
            lhs, rhs = alpha[j] * di, alpha[i] * dj
            ok = (lhs <= rhs) if not maximize else (lhs >= rhs)
            if not ok and not bias.exact:
                ok = abs(float(lhs) - float(rhs)) <= FLOAT_GUARD * max(1.0, float(rhs))
            if not ok:
                bad.append((v, i, j, di, dj))
    return bad
