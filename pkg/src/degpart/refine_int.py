"""Deterministic refinement for internal (own-part) degree floors.

One refinement pass rebuilds part A of a tripartition A|B|C so that every
vertex left in A meets the floored own-degree threshold, without disturbing
the goodness structure that C provides:

  1. extract a core A* of G[A] in which every vertex of degree i already has
     floor(phi(i)) neighbors inside the core (greedy dense extraction with
     classes A ∩ V^i, targets floor(phi(i)), slacks mu_i);
  2. evacuate vertices of A whose joint degree into A ∪ C falls below
     floor(phi(i)), moving each one together with its current C-neighborhood
     into B (processed in ascending id over a work queue);
  3. patch each remaining deficient vertex x of A by pulling
     floor(phi(i)) - d_A(x) of its C-neighbors into A (lowest ids first).

After step 2 every surviving A-vertex has joint degree >= floor(phi(i)), so
the patch can never run out of donors; evacuated vertices land in B with
i - floor(phi(i)) + 1 or more B-neighbors, which exceeds the B-goodness
threshold (the per-degree inequality i - floor(phi(i)) >= floor(thr_int(i))
is re-checked numerically before each run rather than taken on faith).

``min_indegree_tripartition`` applies the pass twice, the second time with
the roles of the two sides exchanged, and re-verifies the target conditions
(size window, per-vertex floors on A and B, doubled floors on C) from
scratch.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .dense import ClassFamily, DegreeClass, ExtractResult, extract_dense
from .graph import Graph, part_profile
from .stage1 import (PART_A, PART_B, PART_C, StageOneResult, goodness_map,
                     stage_one)
from .thresholds import INTERNAL, ParamSet, ThresholdTable, build_threshold_table


@dataclass
class Evacuation:
    vertex: int
    degree: int
    joint_degree_at_move: int  # |N(v) ∩ (A ∪ C)| when the move fired
    absorbed: list  # C-neighbors moved to B together with the vertex


@dataclass
class InternalRefineTrace:
    """Full audit trail of one refinement pass (refines part 0)."""

    ok: bool
    failed_vertex: int | None
    a_star: np.ndarray
    extract: ExtractResult | None
    evacuations: list
    patch: dict
    labels_in: np.ndarray
    labels_out: np.ndarray
    precond: dict
    checks: dict
    guaranteed: bool

    def to_jsonable(self) -> dict:
        return {
            "ok": self.ok,
            "failed_vertex": self.failed_vertex,
            "a_star_size": int(len(self.a_star)),
            "evacuations": [
                {"vertex": e.vertex, "degree": e.degree,
                 "joint_degree": e.joint_degree_at_move, "absorbed": e.absorbed}
                for e in self.evacuations],
            "patch": {str(x): rx for x, rx in self.patch.items()},
            "precond": self.precond,
            "checks": self.checks,
            "guaranteed": self.guaranteed,
        }


def _evacuee_landing_is_good(table: ThresholdTable) -> dict[int, bool]:
    """Check i - floor(phi(i)) >= floor(thr_int(i)) for every active degree.

    This is the arithmetic fact that makes evacuated vertices B-good.  It
    holds for all mu >= 0 (the product (3 + 2*mu)((1-c)/4 - mu/2) never
    reaches 1), but the refinement relies on it per degree, so it is checked
    numerically for the degrees actually present.
    """
    out = {}
    for k, i in enumerate(table.degrees.tolist()):
        if table.active[k]:
            out[int(i)] = bool(i - table.fphi[k] >= table.fthr_int[k])
    return out


def refine_internal_once(graph: Graph, labels: np.ndarray, params: ParamSet,
                         table: ThresholdTable,
                         skip_patch: bool = False) -> InternalRefineTrace:
    """One refinement pass over part 0 of a tripartition (parts 0|1|2).

    Preconditions (every active C-vertex both-good; the A-side weight below
    eps^2*n/250) are checked and recorded, and the pass runs regardless; the
    trace's ``guaranteed`` flag reports whether everything the construction
    promises under those preconditions actually held.  skip_patch disables
    step 3 for ablation runs (the floor check then reports honestly).
    """
    n = graph.n
    labels_in = np.asarray(labels, dtype=np.int64).copy()
    lab = labels_in.copy()
    rows = table.row_index(graph.degree)
    active = table.active[rows]
    fphi = table.fphi[rows]

    counts = part_profile(graph, lab, 3)
    gm = goodness_map(graph, lab, table)
    in_a = lab == PART_A
    weight_a = int(graph.degree[in_a & active & ~gm.good_a].sum())
    precond = {
        "goodness_ok": not bool(((lab == PART_C) & active & ~gm.both_good).any()),
        "weight_a": weight_a,
        "weight_ok_entry": weight_a <= params.eps ** 2 * n / 250.0,
        "weight_ok_stage": weight_a <= params.eps ** 2 * n / 1e4,
    }
    landing = _evacuee_landing_is_good(table)
    arithmetic_ok = all(landing.values())

    # step 1: the dense core of G[A]
    host = np.nonzero(in_a)[0]
    classes = []
    for k, i in enumerate(table.degrees.tolist()):
        if table.active[k] and table.fphi[k] >= 1:
            members = host[graph.degree[host] == i]
            if len(members):
                classes.append(DegreeClass(members, int(table.fphi[k]),
                                           float(table.mu[k])))
    extract = None
    if classes:
        family = ClassFamily(tuple(classes), host)
        extract = extract_dense(graph, family)
        a_star = extract.surviving
    else:
        a_star = host.copy()

    # step 2: evacuation of joint-degree-deficient A vertices
    dac = counts[:, PART_A] + counts[:, PART_C]
    constrained = active & (fphi >= 1)
    evacuations: list[Evacuation] = []
    queue = deque(np.nonzero(in_a & constrained & (dac < fphi))[0].tolist())
    in_c = lab == PART_C
    while queue:
        v = queue.popleft()
        if lab[v] != PART_A or dac[v] >= fphi[v]:
            continue
        absorbed = [w for w in graph.neighbors(v).tolist() if in_c[w]]
        evacuations.append(Evacuation(int(v), int(graph.degree[v]), int(dac[v]),
                                      absorbed))
        moved = [v] + absorbed
        for u in moved:
            lab[u] = PART_B
            in_c[u] = False
        in_a[v] = False
        for u in moved:
            for w in graph.neighbors(u).tolist():
                if in_a[w]:
                    dac[w] -= 1
                    if constrained[w] and dac[w] < fphi[w]:
                        queue.append(w)

    a1 = np.nonzero(in_a)[0]
    a_star_set = set(a_star.tolist())
    assert a_star_set <= set(a1.tolist()), \
        "extracted core lost vertices during evacuation"

    # step 3: patch deficient A vertices from their C-neighborhoods
    counts1 = part_profile(graph, lab, 3)
    patch: dict[int, list[int]] = {}
    ok = True
    failed_vertex = None
    if not skip_patch:
        for v in a1.tolist():
            if constrained[v] and counts1[v, PART_A] < fphi[v]:
                need = int(fphi[v] - counts1[v, PART_A])
                donors = [w for w in graph.neighbors(v).tolist() if in_c[w]]
                if len(donors) < need:
                    ok = False
                    failed_vertex = int(v)
                    break
                patch[int(v)] = donors[:need]
    if ok:
        moved = sorted({w for rx in patch.values() for w in rx})
        for w in moved:
            lab[w] = PART_A
            in_c[w] = False

    # from-scratch verification of the pass contract
    counts2 = part_profile(graph, lab, 3)
    gm2 = goodness_map(graph, lab, table)
    in_a2, in_b2, in_c2 = (lab == PART_A), (lab == PART_B), (lab == PART_C)
    in_b0, in_c0 = labels_in == PART_B, labels_in == PART_C
    drift = params.eps * n / 500.0
    sz = lambda m: int(m.sum())
    checks = {
        "arithmetic_fact": arithmetic_ok,
        "b_grew_only": bool((in_b0 <= in_b2).all()),
        "c_shrank_only": bool((in_c2 <= in_c0).all()),
        "size_drift_a": abs(sz(in_a2) - sz(labels_in == PART_A)) <= drift,
        "size_drift_b": sz(in_b0) <= sz(in_b2) <= sz(in_b0) + drift,
        "size_drift_c": sz(in_c0) - drift <= sz(in_c2) <= sz(in_c0),
        "floor_a": bool((~(active & in_a2) | (counts2[:, PART_A] >= fphi)).all()),
        "c_both_good": not bool((in_c2 & active & ~gm2.both_good).any()),
        "new_b_good": not bool((in_b2 & ~in_b0 & active & ~gm2.good_b).any()),
        "bad_b_contained": bool(
            ((in_b2 & active & ~gm2.good_b) <= (in_b0 & active & ~gm.good_b)).all()),
    }
    if ok:
        assert checks["b_grew_only"] and checks["c_shrank_only"]
        if precond["goodness_ok"] and not skip_patch:
            # patch donors come from C and are A-good, so the floor cannot
            # miss unless the entry goodness precondition already failed
            assert checks["floor_a"], \
                "a vertex of A missed its own-degree floor after the patch"
        if precond["goodness_ok"] and arithmetic_ok:
            assert checks["new_b_good"], \
                "an evacuated vertex landed in B without B-goodness"
    guaranteed = ok and precond["goodness_ok"] and precond["weight_ok_entry"] \
        and all(checks.values())
    return InternalRefineTrace(ok, failed_vertex, a_star, extract, evacuations,
                               patch, labels_in, lab, precond, checks, guaranteed)


@dataclass
class TripartitionResult:
    """A tripartition run: labels, per-condition outcomes, and the audit trail."""

    ok: bool
    labels: np.ndarray
    conditions: dict
    stage1: StageOneResult
    traces: list
    params: ParamSet
    table: ThresholdTable
    diagnostics: dict = field(default_factory=dict)
    guaranteed: bool = False


def _swap_ab(labels: np.ndarray) -> np.ndarray:
    out = labels.copy()
    out[labels == PART_A] = PART_B
    out[labels == PART_B] = PART_A
    return out


def check_tripartition_conditions(graph: Graph, labels: np.ndarray,
                                  params: ParamSet, table: ThresholdTable,
                                  factor_fn: str = "fphi") -> dict:
    """Re-verify the tripartition contract from scratch.

    size_window: (1-c-3e)/2*n <= |A|,|B| <= (1-c-e)/2*n; floor_a/floor_b:
    every active vertex meets floor of the threshold function in its own
    part; floor_c: every active C-vertex meets twice the floor toward both A
    and B.
    """
    n = graph.n
    counts = part_profile(graph, labels, 3)
    rows = table.row_index(graph.degree)
    active = table.active[rows]
    floor_v = table.column(factor_fn)[rows]
    # rounded outward like the stage window, so small instances are not
    # rejected by a sub-integer window width
    lo = math.floor((1.0 - params.c - 3.0 * params.eps) / 2.0 * n)
    hi = math.ceil((1.0 - params.c - params.eps) / 2.0 * n)
    sizes = np.bincount(labels, minlength=3)
    in_a, in_b, in_c = (labels == PART_A), (labels == PART_B), (labels == PART_C)
    return {
        "size_window": bool(lo <= sizes[PART_A] <= hi and lo <= sizes[PART_B] <= hi),
        "floor_a": bool((~(in_a & active) | (counts[:, PART_A] >= floor_v)).all()),
        "floor_b": bool((~(in_b & active) | (counts[:, PART_B] >= floor_v)).all()),
        "floor_c": bool((~(in_c & active) | ((counts[:, PART_A] >= 2 * floor_v)
                                             & (counts[:, PART_B] >= 2 * floor_v))).all()),
    }


def min_indegree_tripartition(graph: Graph, params: ParamSet,
                              table: ThresholdTable | None = None,
                              seed: int = 0, attempts: int = 64,
                              size_window=None, weight_budget=None,
                              stage_log=None) -> TripartitionResult:
    """Stage one, refine the A side, then refine the B side (roles swapped).

    The returned conditions dict re-verifies the four target properties under
    the run's thresholds; ok means the construction completed and all four
    hold.  Stage-one failure short-circuits with the stage diagnostics.
    """
    if params.mode != INTERNAL:
        raise ValueError("min_indegree_tripartition needs an internal-mode ParamSet")
    if table is None:
        table = build_threshold_table(params, np.unique(graph.degree))
    # an explicit window override replaces the default contract: the final
    # size window is still recorded but no longer gates ok
    enforce_size = size_window is None
    s1 = stage_one(graph, params, table, seed=seed, attempts=attempts,
                   size_window=size_window, weight_budget=weight_budget,
                   diagnostics_fh=stage_log)
    if not s1.ok:
        return TripartitionResult(
            False, s1.labels, {}, s1, [], params, table,
            diagnostics={"stage": "stage1", "violated": s1.violated,
                         "failure_counts": s1.failure_counts})
    t1 = refine_internal_once(graph, s1.labels, params, table)
    if not t1.ok:
        return TripartitionResult(
            False, t1.labels_out, {}, s1, [t1], params, table,
            diagnostics={"stage": "refine_a", "failed_vertex": t1.failed_vertex})
    t2 = refine_internal_once(graph, _swap_ab(t1.labels_out), params, table)
    if not t2.ok:
        return TripartitionResult(
            False, _swap_ab(t2.labels_out), {}, s1, [t1, t2], params, table,
            diagnostics={"stage": "refine_b", "failed_vertex": t2.failed_vertex})
    final = _swap_ab(t2.labels_out)
    conditions = check_tripartition_conditions(graph, final, params, table, "fphi")
    gating = {k: v for k, v in conditions.items()
              if enforce_size or k != "size_window"}
    ok = all(gating.values())
    return TripartitionResult(
        ok, final, conditions, s1, [t1, t2], params, table,
        diagnostics={} if ok else {"stage": "conditions",
                                   "failed": [k for k, v in conditions.items() if not v]})
