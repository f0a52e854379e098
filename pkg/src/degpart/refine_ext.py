r"""Deterministic refinement for external (cross) degree floors.

Starting from a stage-one tripartition X|Y|Z whose active Z-vertices are
X-good and Y-good, the construction makes every vertex of the two sides meet
a floored cross-degree floor:

  1. dense-extract on the bipartite cross subgraph H = (X,Y)_G with classes
     V^i ∩ (X ∪ Y), targets floor(psi*(i)) and slacks eta_i, leaving a core
     H' = X1 ∪ Y1 in which every vertex already has enough cross neighbors;
  2. quarantine W1 = V(H \ H') ∪ (N(V(H \ H')) ∩ Z); the rest of Z becomes
     Z1 and keeps its entire X/Y-neighborhood inside the core (purity);
  3. greedily absorb W vertices: anyone with floor(psi(i)) neighbors in the
     current X side joins the Y side and vice versa (passes in ascending id,
     alternating which side is probed first), until nobody qualifies;
  4. split the leftover W2 by a flip-local max-cut of G[W2]; each leftover
     vertex has >= 2*floor(psi(i)) neighbors inside W2, so its cut side
     gives it >= floor(psi(i)) cross neighbors.

The three absorption-exit facts (both side-degrees below floor(psi), inner
W2 degree at least twice it) are asserted on every run, and the final
tripartition is re-verified from scratch.
"""

from __future__ import annotations

import math
import math
from dataclasses import dataclass

import numpy as np

from .cuts import local_maxcut
from .dense import ClassFamily, DegreeClass, ExtractResult, extract_dense
from .graph import Graph, part_profile
from .refine_int import TripartitionResult
from .stage1 import PART_A, PART_B, PART_C, goodness_map, stage_one
from .thresholds import EXTERNAL, ParamSet, ThresholdTable, build_threshold_table

PART_X, PART_Y, PART_Z = PART_A, PART_B, PART_C


@dataclass
class Absorption:
    vertex: int
    degree: int
    destination: int          # PART_X or PART_Y
    witnessed_cross: int      # neighbors in the opposite current side
    threshold: int


@dataclass
class ExternalTrace:
    """Audit trail of the external refinement after stage one."""

    extract: ExtractResult | None
    w1: np.ndarray
    absorbed: list
    w2: np.ndarray
    wcut: tuple
    labels_out: np.ndarray
    precond: dict
    checks: dict

    def to_jsonable(self) -> dict:
        return {
            "deleted": [] if self.extract is None else
            [list(t) for t in self.extract.deleted],
            "w1_size": int(len(self.w1)),
            "absorbed": [
                {"vertex": a.vertex, "degree": a.degree, "dest": a.destination,
                 "witnessed_cross": a.witnessed_cross, "threshold": a.threshold}
                for a in self.absorbed],
            "w2": self.w2.tolist(),
            "w_plus": self.wcut[0].tolist(),
            "w_minus": self.wcut[1].tolist(),
            "precond": self.precond,
            "checks": self.checks,
        }


def check_external_conditions(graph: Graph, labels: np.ndarray,
                              params: ParamSet, table: ThresholdTable) -> dict:
    """Re-verify size window, cross floors on X∪Y, doubled floors on Z."""
    n = graph.n
    counts = part_profile(graph, labels, 3)
    rows = table.row_index(graph.degree)
    active = table.active[rows]
    fpsi = table.fpsi[rows]
    # rounded outward like the stage window (see refine_int)
    lo = math.floor((1.0 - params.c - 3.0 * params.eps) / 2.0 * n)
    hi = math.ceil((1.0 - params.c - params.eps) / 2.0 * n)
    sizes = np.bincount(labels, minlength=3)
    in_x, in_y, in_z = (labels == PART_X), (labels == PART_Y), (labels == PART_Z)
    cross = np.where(in_x, counts[:, PART_Y], counts[:, PART_X])
    return {
        "size_window": bool(lo <= sizes[PART_X] <= hi and lo <= sizes[PART_Y] <= hi),
        "floor_cross": bool((~((in_x | in_y) & active) | (cross >= fpsi)).all()),
        "floor_z": bool((~(in_z & active) | ((counts[:, PART_X] >= 2 * fpsi)
                                             & (counts[:, PART_Y] >= 2 * fpsi))).all()),
    }


def refine_external(graph: Graph, labels: np.ndarray, params: ParamSet,
                    table: ThresholdTable, cut_seed: int = 0,
                    skip_cut: bool = False) -> ExternalTrace:
    """Run extraction, quarantine, absorption and the W2 cut on X|Y|Z labels.

    skip_cut replaces the max-cut split of the leftover W2 by an arbitrary
    one-sided assignment (ablation: shows why the cut step is needed for the
    leftover vertices' cross floors).
    """
    n = graph.n
    lab = np.asarray(labels, dtype=np.int64).copy()
    rows = table.row_index(graph.degree)
    active = table.active[rows]
    fpsi = table.fpsi[rows]
    fpsi_star = table.fpsi_star[rows]

    gm = goodness_map(graph, lab, table)
    in_z0 = lab == PART_Z
    precond = {
        "goodness_ok": not bool((in_z0 & active & ~gm.both_good).any()),
        "stage_weight": gm.weight,
    }
    # psi* is lifted to at least (1-c)i/8, so i <= 8*psi*(i)/(1-c) for active i
    for k, i in enumerate(table.degrees.tolist()):
        if table.active[k]:
            assert i <= 8.0 * table.psi_star[k] / (1.0 - params.c) * (1 + 1e-12), \
                f"psi* lift violated at degree {i}"

    in_x = lab == PART_X
    in_y = lab == PART_Y
    host = np.nonzero(in_x | in_y)[0]

    # step 1: extraction over the cross subgraph
    h_graph = graph.cross_subgraph(lab, PART_X, PART_Y)
    classes = []
    for k, i in enumerate(table.degrees.tolist()):
        if table.active[k] and table.fpsi_star[k] >= 1:
            members = host[graph.degree[host] == i]
            if len(members):
                classes.append(DegreeClass(members, int(table.fpsi_star[k]),
                                           float(table.eta[k])))
    extract = None
    deleted_ids = np.empty(0, dtype=np.int64)
    if classes:
        family = ClassFamily(tuple(classes), host)
        extract = extract_dense(h_graph, family)
        deleted_ids = extract.deleted_vertices

    # step 2: quarantine W1 and keep the pure remainder of Z
    in_w = np.zeros(n, dtype=bool)
    in_w[deleted_ids] = True
    for v in deleted_ids.tolist():
        for u in graph.neighbors(v).tolist():
            if lab[u] == PART_Z:
                in_w[u] = True
    w1 = np.nonzero(in_w)[0]
    # purity: Z1 vertices have all their X/Y neighbors inside the core, i.e.
    # no Z1 vertex touches an extracted vertex (those went to W1 instead)
    x1_mask = in_x & ~in_w
    y1_mask = in_y & ~in_w
    z1_mask = in_z0 & ~in_w
    deleted_mask = np.zeros(n, dtype=bool)
    deleted_mask[deleted_ids] = True
    rows_all = np.repeat(np.arange(n, dtype=np.int64), graph.degree)
    assert not bool((z1_mask[rows_all] & deleted_mask[graph.indices]).any()), \
        "a Z1 vertex touches an extracted vertex"
    w1_budget = len(deleted_ids) + int(graph.degree[deleted_ids].sum())
    assert len(w1) <= w1_budget, "W1 accounting bound violated"

    # step 3: greedy absorption toward the side opposite the witnessed one
    side = np.full(n, -1, dtype=np.int64)   # current side of core members
    side[x1_mask] = PART_X
    side[y1_mask] = PART_Y
    d_to_x = np.zeros(n, dtype=np.int64)
    d_to_y = np.zeros(n, dtype=np.int64)
    w2 = sorted(w1.tolist())
    for v in w2:
        for u in graph.neighbors(v).tolist():
            if side[u] == PART_X:
                d_to_x[v] += 1
            elif side[u] == PART_Y:
                d_to_y[v] += 1
    absorbed: list[Absorption] = []
    probe_x_first = True
    changed = True
    while changed:
        changed = False
        remaining = []
        for v in w2:
            thr = fpsi[v]
            take = None
            if probe_x_first:
                if d_to_x[v] >= thr:
                    take = (PART_Y, int(d_to_x[v]))
                elif d_to_y[v] >= thr:
                    take = (PART_X, int(d_to_y[v]))
            else:
                if d_to_y[v] >= thr:
                    take = (PART_X, int(d_to_y[v]))
                elif d_to_x[v] >= thr:
                    take = (PART_Y, int(d_to_x[v]))
            if take is None:
                remaining.append(v)
                continue
            dest, witnessed = take
            side[v] = dest
            absorbed.append(Absorption(int(v), int(graph.degree[v]), dest,
                                       witnessed, int(thr)))
            for u in graph.neighbors(v).tolist():
                if dest == PART_X:
                    d_to_x[u] += 1
                else:
                    d_to_y[u] += 1
            probe_x_first = not probe_x_first
            changed = True
        w2 = remaining
    w2 = np.array(w2, dtype=np.int64)

    # absorption-exit facts
    in_w2 = np.zeros(n, dtype=bool)
    in_w2[w2] = True
    checks = {"w2_all_active": bool(active[w2].all()) if len(w2) else True,
              "precut_side_floors": True, "precut_inner_floor": True}
    for v in w2.tolist():
        d_w2 = int(in_w2[graph.neighbors(v)].sum())
        if not (d_to_x[v] < fpsi[v] and d_to_y[v] < fpsi[v]):
            checks["precut_side_floors"] = False
        if d_w2 < 2 * fpsi[v]:
            checks["precut_inner_floor"] = False
    assert checks["precut_side_floors"], \
        "absorption exited with an absorbable vertex left"
    assert checks["w2_all_active"], "an inactive vertex survived absorption"
    if precond["goodness_ok"]:
        assert checks["precut_inner_floor"], \
            "leftover W2 vertex below twice the cross floor"

    # step 4: flip-local max-cut of G[W2]
    if skip_cut:
        w_plus, w_minus = w2, np.empty(0, dtype=np.int64)
    else:
        w_plus, w_minus, _ = local_maxcut(graph, w2, seed=cut_seed)
    side[w_plus] = PART_X
    side[w_minus] = PART_Y

    out = lab.copy()
    out[side == PART_X] = PART_X
    out[side == PART_Y] = PART_Y
    # Z3 = Z1: quarantined Z vertices all got a side, the rest keep PART_Z

    # membership sandwich: X \ W1 ⊆ X1 ⊆ X3 ⊆ X ∪ W1
    in_x3 = out == PART_X
    assert bool(((in_x & ~in_w) <= in_x3).all()) and bool((x1_mask <= in_x3).all())
    assert bool((in_x3 <= (in_x | in_w)).all())
    in_y3 = out == PART_Y
    assert bool(((in_y & ~in_w) <= in_y3).all()) and bool((in_y3 <= (in_y | in_w)).all())

    # cut guarantee for the leftover vertices (void under the ablation)
    if len(w2) and checks["precut_inner_floor"] and not skip_cut:
        counts3 = part_profile(graph, out, 3)
        for v in w2.tolist():
            cross = counts3[v, PART_Y] if out[v] == PART_X else counts3[v, PART_X]
            assert cross >= fpsi[v], f"cut side of {v} lost its cross floor"

    return ExternalTrace(extract, w1, absorbed, w2, (w_plus, w_minus), out,
                         precond, checks)


def min_outdegree_tripartition(graph: Graph, params: ParamSet,
                               table: ThresholdTable | None = None,
                               seed: int = 0, attempts: int = 64,
                               size_window=None, weight_budget=None,
                               stage_log=None) -> TripartitionResult:
    """Stage one then the external refinement; conditions re-verified."""
    if params.mode != EXTERNAL:
        raise ValueError("min_outdegree_tripartition needs an external-mode ParamSet")
    if table is None:
        table = build_threshold_table(params, np.unique(graph.degree))
    # as in the internal driver: explicit window overrides demote the final
    # size-window condition to a recorded (non-gating) check
    enforce_size = size_window is None
    s1 = stage_one(graph, params, table, seed=seed, attempts=attempts,
                   size_window=size_window, weight_budget=weight_budget,
                   diagnostics_fh=stage_log)
    if not s1.ok:
        return TripartitionResult(
            False, s1.labels, {}, s1, [], params, table,
            diagnostics={"stage": "stage1", "violated": s1.violated,
                         "failure_counts": s1.failure_counts})
    trace = refine_external(graph, s1.labels, params, table, cut_seed=seed)
    conditions = check_external_conditions(graph, trace.labels_out, params, table)
    gating = {k: v for k, v in conditions.items()
              if enforce_size or k != "size_window"}
    ok = all(gating.values())
    diagnostics = {"precut_checks": dict(trace.checks),
                   "refine_precond": dict(trace.precond)}
    if not ok:
        diagnostics.update({"stage": "conditions",
                            "failed": [k for k, v in conditions.items() if not v]})
    return TripartitionResult(
        ok, trace.labels_out, conditions, s1, [trace], params, table,
        diagnostics=diagnostics)
