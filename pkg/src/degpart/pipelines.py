"""End-to-end constructions: bisections, exact tripartitions, dual-floor
bisections, cut-average bisections, and r-partitions.

Every pipeline returns a PipelineReport carrying the final labeling, from-
scratch statistics, and a certificate whose claims were each re-checked
before emission, so the independent verifier always passes it.  Whenever a
hypothesis is unmet (minimum degree, or the instance being too small for the
asymptotic guarantees to bind) the pipeline still runs but reports
guaranteed=False; nothing is claimed silently.  The asymptotic thresholds
have no known explicit values, so guaranteed=True additionally requires the
caller to set ``n_guarantee_threshold`` and the instance to clear it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import certify
from .certify import Certificate, graph_fingerprint
from .cuts import BiasVector, biased_max_r_cut, check_biased_local_min
from .graph import Graph, LabeledPartition, part_profile
from .refine_ext import min_outdegree_tripartition
from .refine_int import min_indegree_tripartition
from .stage1 import PART_A, PART_B, PART_C
from .thresholds import EXTERNAL, INTERNAL, ParamSet

VERSION = "0.1.0"


# -- statistics --------------------------------------------------------------


def _exact_min_ratio(num: np.ndarray, den: np.ndarray):
    """Exact min of num[i]/den[i] over entries with den > 0.

    Returns (Fraction, index) or (inf, None) when no entry qualifies.  A
    float argmin seeds the scan; the exact sweep settles near-ties.
    """
    pos = den > 0
    if not pos.any():
        return math.inf, None
    idx = np.nonzero(pos)[0]
    best_i = int(idx[np.argmin(num[idx] / den[idx])])
    best = Fraction(int(num[best_i]), int(den[best_i]))
    for i in idx.tolist():
        f = Fraction(int(num[i]), int(den[i]))
        if f < best:
            best, best_i = f, i
    return best, best_i


def partition_stats(graph: Graph, labels: np.ndarray, r: int) -> dict:
    """From-scratch degree statistics of a labeling.

    Degree minima run over all vertices (isolated vertices count as 0);
    ratio minima run over positive-degree vertices only and are exact
    fractions (inf when every vertex is isolated).
    """
    labels = np.asarray(labels, dtype=np.int64)
    counts = part_profile(graph, labels, r)
    own = counts[np.arange(graph.n), labels]
    cross = graph.degree - own
    cut = int(cross.sum()) // 2
    own_ratio, _ = _exact_min_ratio(own, graph.degree)
    cross_ratio, _ = _exact_min_ratio(cross, graph.degree)

    def frac_fields(frac):
        if frac is math.inf:
            return math.inf, None
        return float(frac), [frac.numerator, frac.denominator]

    own_val, own_frac = frac_fields(own_ratio)
    cross_val, cross_frac = frac_fields(cross_ratio)
    return {
        "sizes": np.bincount(labels, minlength=r).tolist(),
        "min_own_degree": int(own.min()) if graph.n else 0,
        "min_cross_degree": int(cross.min()) if graph.n else 0,
        "min_own_ratio": own_val,
        "min_own_ratio_frac": own_frac,
        "min_cross_ratio": cross_val,
        "min_cross_ratio_frac": cross_frac,
        "cut_edges": cut,
        "cut_avg_degree": (2.0 * cut / graph.n) if graph.n else 0.0,
    }


def _stats_claims(stats: dict) -> list[dict]:
    claims = [
        certify.claim_extremal_stat("min_own_degree", stats["min_own_degree"]),
        certify.claim_extremal_stat("min_cross_degree", stats["min_cross_degree"]),
    ]
    if stats["min_own_ratio_frac"] is not None:
        claims.append(certify.claim_extremal_ratio(
            "own", *stats["min_own_ratio_frac"]))
    if stats["min_cross_ratio_frac"] is not None:
        claims.append(certify.claim_extremal_ratio(
            "cross", *stats["min_cross_ratio_frac"]))
    return claims


def random_bisection_stats(graph: Graph, seed: int = 0) -> dict:
    """Stats of a uniformly random balanced bisection (baseline pairing)."""
    rng = np.random.default_rng(seed)
    labels = np.zeros(graph.n, dtype=np.int64)
    labels[rng.permutation(graph.n)[: graph.n // 2]] = 1
    return partition_stats(graph, labels, 2)


# -- report ------------------------------------------------------------------


@dataclass
class PipelineReport:
    mode: str
    shape: str
    params: dict
    n: int
    r: int
    labels: np.ndarray
    stats: dict
    certificate: Certificate
    ok: bool
    guaranteed: bool
    seed: int
    diagnostics: dict = field(default_factory=dict)

    def partition(self) -> LabeledPartition:
        return LabeledPartition(self.r, self.labels)

    def to_jsonable(self) -> dict:
        return {
            "mode": self.mode, "shape": self.shape, "params": self.params,
            "n": self.n, "r": self.r, "labels": self.labels.tolist(),
            "stats": self.stats, "certificate": self.certificate.to_jsonable(),
            "ok": self.ok, "guaranteed": self.guaranteed, "seed": self.seed,
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_jsonable(cls, d: dict) -> "PipelineReport":
        return cls(d["mode"], d["shape"], d["params"], d["n"], d["r"],
                   np.asarray(d["labels"], dtype=np.int64), d["stats"],
                   Certificate.from_jsonable(d["certificate"]), d["ok"],
                   d["guaranteed"], d.get("seed", 0), d.get("diagnostics", {}))


def _make_report(graph: Graph, shape: str, params: ParamSet | dict,
                 labels: np.ndarray, r: int, claims: list, ok: bool,
                 guaranteed: bool, seed: int, diagnostics: dict) -> PipelineReport:
    pdict = params.as_dict() if isinstance(params, ParamSet) else dict(params)
    mode = pdict.get("mode", "n/a")
    stats = partition_stats(graph, labels, r)
    cert = Certificate(graph_fingerprint(graph), pdict, seed, VERSION,
                       claims + _stats_claims(stats))
    return PipelineReport(mode, shape, pdict, graph.n, r, labels, stats, cert,
                          ok, guaranteed, seed, diagnostics)


def _guarantee(ok: bool, hyp_ok: bool, n: int,
               n_guarantee_threshold: int | None) -> bool:
    # the asymptotic size thresholds have no explicit values; without a
    # user-asserted threshold no run claims a guarantee
    return bool(ok and hyp_ok and n_guarantee_threshold is not None
                and n >= n_guarantee_threshold)


def _verified_claims(graph: Graph, labels: np.ndarray, r: int,
                     candidates: list[dict]):
    """Check each candidate claim from scratch; emit only the true ones.

    Returns (true claims, per-candidate truth flags).  Keeps failure reports
    honest: a pipeline never certifies a statement its own recount rejects.
    """
    ctx = certify._Context(graph, np.asarray(labels, dtype=np.int64), r)
    flags = [certify._check_claim(ctx, c)[0] for c in candidates]
    return [c for c, ok in zip(candidates, flags) if ok], flags


# -- C distribution ----------------------------------------------------------


def distribute_c_for_balance(graph: Graph, labels: np.ndarray,
                             prefer: str = "own",
                             cap_a: int | None = None):
    """Fold part C of a tripartition into A and B to form a bisection.

    C-vertices are sorted by d_A - d_B (descending), and the available A
    slots go to the most A-leaning vertices when prefer="own" (internal
    pipelines: keep movers next to their neighbors) or the least A-leaning
    when prefer="cross" (external pipelines: put movers opposite their
    neighbors).  cap_a fixes the number of C-vertices that A receives
    (cut-average split); default fills A up to ceil-half of n.

    Returns (labels2, feasible); infeasible slot counts fall back to
    smaller-side filling and feasible=False.
    """
    lab = np.asarray(labels, dtype=np.int64).copy()
    counts = part_profile(graph, lab, 3)
    c_ids = np.nonzero(lab == PART_C)[0]
    size_a = int((lab == PART_A).sum())
    size_b = int((lab == PART_B).sum())
    n = graph.n
    if cap_a is None:
        target_a = n - n // 2 if size_a >= size_b else n // 2
        slots_a = target_a - size_a
    else:
        slots_a = int(cap_a)
    slots_b = len(c_ids) - slots_a
    if slots_a < 0 or slots_b < 0:
        for v in c_ids.tolist():  # best effort: keep sizes as close as we can
            if size_a <= size_b:
                lab[v] = PART_A
                size_a += 1
            else:
                lab[v] = PART_B
                size_b += 1
        return lab, False
    lean = counts[c_ids, PART_A] - counts[c_ids, PART_B]
    order = np.lexsort((c_ids, -lean))  # descending lean, ties by id
    ranked = c_ids[order]
    if prefer == "cross":
        ranked = ranked[::-1]
    lab[ranked[:slots_a]] = PART_A
    lab[ranked[slots_a:]] = PART_B
    return lab, True


# -- bisection pipelines -----------------------------------------------------


def _failure_report(graph: Graph, shape: str, params: ParamSet, tri,
                    seed: int, r: int = 3) -> PipelineReport:
    diagnostics = {"failure": tri.diagnostics,
                   "stage1_attempts": tri.stage1.attempts if tri.stage1 else None}
    return _make_report(graph, shape, params, tri.labels, r, [], False, False,
                        seed, diagnostics)


def bisect_internal(graph: Graph, params: ParamSet | None = None, *,
                    eps: float = 0.25, d_const: float | None = None,
                    seed: int = 0, attempts: int = 64, size_window=None,
                    weight_budget=None, stage_log=None,
                    n_guarantee_threshold: int | None = None) -> PipelineReport:
    """Bisection where every active vertex keeps floor(phi(d)) own-part
    neighbors: tripartition with doubled floors on C, then fold C in for
    balance (either destination preserves a C-vertex's floor)."""
    if params is None:
        params = ParamSet(0.0, eps, INTERNAL, d_const=d_const)
    if params.c != 0.0 or params.mode != INTERNAL:
        raise ValueError("bisect_internal needs an internal-mode ParamSet with c=0")
    tri = min_indegree_tripartition(graph, params, seed=seed, attempts=attempts,
                                    size_window=size_window,
                                    weight_budget=weight_budget,
                                    stage_log=stage_log)
    if not tri.ok:
        return _failure_report(graph, "bisect", params, tri, seed)
    labels, feasible = distribute_c_for_balance(graph, tri.labels, prefer="own")
    part = LabeledPartition(2, np.where(labels == PART_B, 1, 0))
    floor_claim = certify.claim_degree_floor(
        "all", "own", certify.table_floor("phi", params, 1))
    claims, flags = _verified_claims(graph, part.labels, 2, [
        certify.claim_balance(1),
        certify.claim_part_sizes(part.sizes()),
        floor_claim,
    ])
    ok = feasible and flags[0] and flags[2]
    report = _make_report(graph, "bisect", params, part.labels, 2, claims, ok,
                          _guarantee(ok, True, graph.n, n_guarantee_threshold),
                          seed, {"tripartition_conditions": tri.conditions,
                                 "stage1_attempts": tri.stage1.attempts})
    _assert_self_verifies(graph, report)
    return report


def bisect_external(graph: Graph, params: ParamSet | None = None, *,
                    eps: float = 0.09, d_const: float | None = None,
                    seed: int = 0, attempts: int = 64, size_window=None,
                    weight_budget=None, stage_log=None,
                    n_guarantee_threshold: int | None = None) -> PipelineReport:
    """Bisection where every active vertex keeps floor(psi(d)) neighbors in
    the opposite part; C-vertices carry doubled floors toward both sides, so
    any destination works."""
    if params is None:
        params = ParamSet(0.0, eps, EXTERNAL, d_const=d_const)
    if params.c != 0.0 or params.mode != EXTERNAL:
        raise ValueError("bisect_external needs an external-mode ParamSet with c=0")
    tri = min_outdegree_tripartition(graph, params, seed=seed, attempts=attempts,
                                     size_window=size_window,
                                     weight_budget=weight_budget,
                                     stage_log=stage_log)
    if not tri.ok:
        return _failure_report(graph, "bisect", params, tri, seed)
    labels, feasible = distribute_c_for_balance(graph, tri.labels, prefer="cross")
    part = LabeledPartition(2, np.where(labels == PART_B, 1, 0))
    claims, flags = _verified_claims(graph, part.labels, 2, [
        certify.claim_balance(1),
        certify.claim_part_sizes(part.sizes()),
        certify.claim_degree_floor("all", "cross",
                                   certify.table_floor("psi", params, 1)),
    ])
    ok = feasible and flags[0] and flags[2]
    report = _make_report(graph, "bisect", params, part.labels, 2, claims, ok,
                          _guarantee(ok, True, graph.n, n_guarantee_threshold),
                          seed, {"tripartition_conditions": tri.conditions,
                                 "precut_checks": tri.diagnostics.get("precut_checks"),
                                 "stage1_attempts": tri.stage1.attempts})
    _assert_self_verifies(graph, report)
    return report


# -- exact tripartitions and derived bisection pipelines ---------------------


def _derived_eps(c: float, eps: float) -> float:
    return (1.0 - c) ** 2 * eps / 40.0


def tripartition_exact(graph: Graph, k: int, params: ParamSet, *,
                       seed: int = 0, attempts: int = 64, size_window=None,
                       weight_budget=None,
                       n_guarantee_threshold: int | None = None) -> PipelineReport:
    """Tripartition with integer floors: own-degree >= k on A and B (internal
    mode) or cross-degree >= k on A∪B (external), plus >= 2k from C toward
    both sides, and sizes within [(1-c-eps)/2, (1-c)/2]*n.

    The run uses the derived parameter eps' = (1-c)^2*eps/40 internally; the
    minimum-degree hypothesis (4/(1-c)+eps)*k is reported and inputs below it
    run best-effort with guaranteed=False.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    c, eps = params.c, params.eps
    if eps > 1.0 - c:
        raise ValueError(f"tripartition_exact needs eps <= 1-c, got {eps}")
    run_params = ParamSet(c, _derived_eps(c, eps), params.mode,
                          d_const=params.d_const)
    n = graph.n
    if size_window is None:
        lo = (1.0 - c - eps) / 2.0 * n
        hi = (1.0 - c) / 2.0 * n
        size_window = (lo, hi)
    runner = min_indegree_tripartition if params.mode == INTERNAL \
        else min_outdegree_tripartition
    tri = runner(graph, run_params, seed=seed, attempts=attempts,
                 size_window=size_window, weight_budget=weight_budget)
    min_deg = int(graph.degree.min()) if n else 0
    hyp_floor = (4.0 / (1.0 - c) + eps) * k
    hyp_ok = min_deg >= hyp_floor
    if not tri.ok and tri.diagnostics.get("stage") != "conditions":
        rep = _failure_report(graph, "tripart", run_params, tri, seed)
        rep.diagnostics["min_degree_hypothesis"] = {"required": hyp_floor,
                                                    "actual": min_deg,
                                                    "ok": hyp_ok}
        return rep

    labels = tri.labels
    counts = part_profile(graph, labels, 3)
    in_a, in_b, in_c = (labels == 0), (labels == 1), (labels == 2)
    lo, hi = size_window
    sizes = np.bincount(labels, minlength=3)
    if params.mode == INTERNAL:
        floor_ab = bool((counts[in_a, PART_A] >= k).all()
                        and (counts[in_b, PART_B] >= k).all())
    else:
        cross = np.where(in_a, counts[:, PART_B], counts[:, PART_A])
        floor_ab = bool((cross[in_a | in_b] >= k).all())
    conditions = {
        "size_window": bool(lo <= sizes[0] <= hi and lo <= sizes[1] <= hi),
        "floor_ab": floor_ab,
        "floor_c": bool(((counts[in_c, PART_A] >= 2 * k)
                         & (counts[in_c, PART_B] >= 2 * k)).all()),
    }
    ok = all(conditions.values())
    claims = []
    if conditions["size_window"]:
        claims += [certify.claim_part_size_window(0, lo, hi),
                   certify.claim_part_size_window(1, lo, hi)]
    if conditions["floor_ab"]:
        if params.mode == INTERNAL:
            claims += [certify.claim_degree_floor(0, 0, certify.const_floor(k)),
                       certify.claim_degree_floor(1, 1, certify.const_floor(k))]
        else:
            claims += [certify.claim_degree_floor(0, 1, certify.const_floor(k)),
                       certify.claim_degree_floor(1, 0, certify.const_floor(k))]
    if conditions["floor_c"]:
        claims += [certify.claim_degree_floor(2, 0, certify.const_floor(2 * k)),
                   certify.claim_degree_floor(2, 1, certify.const_floor(2 * k))]
    diagnostics = {"conditions": conditions,
                   "min_degree_hypothesis": {"required": hyp_floor,
                                             "actual": min_deg, "ok": hyp_ok},
                   "k": k, "stage1_attempts": tri.stage1.attempts}
    report = _make_report(graph, "tripart", run_params, labels, 3, claims, ok,
                          _guarantee(ok, hyp_ok, n, n_guarantee_threshold),
                          seed, diagnostics)
    _assert_self_verifies(graph, report)
    return report


def bisect_dual(graph: Graph, k: int, eps: float, primary: str = INTERNAL, *,
                d_const: float | None = None, seed: int = 0, attempts: int = 64,
                size_window=None, weight_budget=None,
                n_guarantee_threshold: int | None = None) -> PipelineReport:
    """Bisection meeting the primary floor k everywhere, with the count of
    vertices also meeting the secondary floor k reported against (1-eps)*n.

    Runs the exact tripartition machinery at c = 1-eps: the C part (nearly
    everything) carries doubled floors toward both sides, so after folding C
    in, its vertices meet both the own and the cross floor.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0,1)")
    c = 1.0 - eps
    run_params = ParamSet(c, _derived_eps(c, eps), primary, d_const=d_const)
    n = graph.n
    if size_window is None:
        size_window = (0.0, (1.0 - c) / 2.0 * n)
    runner = min_indegree_tripartition if primary == INTERNAL \
        else min_outdegree_tripartition
    tri = runner(graph, run_params, seed=seed, attempts=attempts,
                 size_window=size_window, weight_budget=weight_budget)
    min_deg = int(graph.degree.min()) if n else 0
    hyp_floor = (4.0 / eps + eps) * k
    hyp_ok = min_deg >= hyp_floor
    if not tri.ok and tri.diagnostics.get("stage") != "conditions":
        rep = _failure_report(graph, "dual", run_params, tri, seed)
        rep.diagnostics["min_degree_hypothesis"] = {"required": hyp_floor,
                                                    "actual": min_deg,
                                                    "ok": hyp_ok}
        return rep
    prefer = "own" if primary == INTERNAL else "cross"
    labels, feasible = distribute_c_for_balance(graph, tri.labels, prefer=prefer)
    part_labels = np.where(labels == PART_B, 1, 0)
    counts = part_profile(graph, part_labels, 2)
    own = counts[np.arange(n), part_labels]
    cross = graph.degree - own
    primary_stat, secondary_stat = (own, cross) if primary == INTERNAL else (cross, own)
    primary_ok = bool((primary_stat >= k).all())
    secondary_count = int((secondary_stat >= k).sum())
    secondary_target = (1.0 - eps) * n
    secondary_name = "cross" if primary == INTERNAL else "own"
    candidates = [certify.claim_balance(1),
                  certify.claim_count_meeting_floor(secondary_name, k,
                                                    secondary_count)]
    if primary_ok:
        candidates.append(certify.claim_degree_floor(
            "all", "own" if primary == INTERNAL else "cross",
            certify.const_floor(k)))
    claims, flags = _verified_claims(graph, part_labels, 2, candidates)
    ok = feasible and primary_ok and flags[0]
    diagnostics = {
        "k": k, "eps": eps, "primary": primary,
        "secondary_count": secondary_count,
        "secondary_target": secondary_target,
        "secondary_ok": secondary_count >= secondary_target,
        "min_degree_hypothesis": {"required": hyp_floor, "actual": min_deg,
                                  "ok": hyp_ok},
        "stage1_attempts": tri.stage1.attempts,
    }
    report = _make_report(graph, "dual", run_params, part_labels, 2, claims, ok,
                          _guarantee(ok, hyp_ok, n, n_guarantee_threshold),
                          seed, diagnostics)
    _assert_self_verifies(graph, report)
    return report


def bisect_with_cut_average(graph: Graph, k: int, eps: float, *,
                            d_const: float | None = None, seed: int = 0,
                            attempts: int = 64, size_window=None,
                            weight_budget=None,
                            n_guarantee_threshold: int | None = None) -> PipelineReport:
    """Bisection with own-degree >= k on both sides and cut size >= 2k*|C|.

    Runs the internal tripartition at c = 1/4; C is split with exactly
    floor(n/2) - |A| vertices joining A, so each C-vertex spends its doubled
    floor once on its own side and keeps >= 2k cross neighbors, giving the
    cut at least 2k*|C| >= k*n/2 edges when the tripartition conditions held.
    """
    c = 0.25
    run_params = ParamSet(c, _derived_eps(c, eps), INTERNAL, d_const=d_const)
    n = graph.n
    if size_window is None:
        size_window = ((1.0 - c - eps) / 2.0 * n, (1.0 - c) / 2.0 * n)
    tri = min_indegree_tripartition(graph, run_params, seed=seed,
                                    attempts=attempts, size_window=size_window,
                                    weight_budget=weight_budget)
    min_deg = int(graph.degree.min()) if n else 0
    hyp_floor = (16.0 / 3.0 + eps) * k
    hyp_ok = min_deg >= hyp_floor
    if not tri.ok and tri.diagnostics.get("stage") != "conditions":
        rep = _failure_report(graph, "cutavg", run_params, tri, seed)
        rep.diagnostics["min_degree_hypothesis"] = {"required": hyp_floor,
                                                    "actual": min_deg,
                                                    "ok": hyp_ok}
        return rep
    sizes = np.bincount(tri.labels, minlength=3)
    cap_a = n // 2 - int(sizes[PART_A])
    size_c = int(sizes[PART_C])
    if not 0 <= cap_a <= size_c:
        rep = _make_report(graph, "cutavg", run_params, tri.labels, 3, [],
                           False, False, seed,
                           {"failure": "C split infeasible",
                            "cap_a": cap_a, "size_c": size_c})
        return rep
    labels, _ = distribute_c_for_balance(graph, tri.labels, prefer="own",
                                         cap_a=cap_a)
    part_labels = np.where(labels == PART_B, 1, 0)
    counts = part_profile(graph, part_labels, 2)
    own = counts[np.arange(n), part_labels]
    cut = int((graph.degree - own).sum()) // 2
    cut_bound = 2 * k * size_c
    own_ok = bool((own >= k).all())
    cut_ok = cut >= cut_bound
    candidates = [certify.claim_balance(1)]
    if own_ok:
        candidates.append(certify.claim_degree_floor("all", "own",
                                                     certify.const_floor(k)))
    if cut_ok:
        candidates.append(certify.claim_cut_edges_at_least(cut_bound))
    claims, flags = _verified_claims(graph, part_labels, 2, candidates)
    ok = own_ok and cut_ok and flags[0]
    diagnostics = {
        "k": k, "eps": eps, "cut_edges": cut, "cut_bound": cut_bound,
        "size_c": size_c, "cut_avg_degree": 2.0 * cut / n if n else 0.0,
        "avg_cut_target": float(k),
        "min_degree_hypothesis": {"required": hyp_floor, "actual": min_deg,
                                  "ok": hyp_ok},
        "stage1_attempts": tri.stage1.attempts,
    }
    report = _make_report(graph, "cutavg", run_params, part_labels, 2, claims,
                          ok, _guarantee(ok, hyp_ok, n, n_guarantee_threshold),
                          seed, diagnostics)
    _assert_self_verifies(graph, report)
    return report


# -- r-partitions ------------------------------------------------------------


def _target_sizes(bias: BiasVector, n: int) -> list[int]:
    """floor(alpha_i * n) with the remainder going to the largest fractional
    parts (ties to the lower index)."""
    alphas = [Fraction(a) if not isinstance(a, Fraction) else a
              for a in bias.alpha]
    floors = [int(a * n) for a in alphas]
    fracs = [a * n - f for a, f in zip(alphas, floors)]
    rest = n - sum(floors)
    order = sorted(range(len(alphas)), key=lambda i: (-fracs[i], i))
    for i in order[:rest]:
        floors[i] += 1
    if any(f < 1 for f in floors):
        bad = floors.index(0)
        raise ValueError(
            f"part {bad} rounds to zero vertices (alpha={float(alphas[bad])}, n={n})")
    return floors


def r_partition(graph: Graph, bias: BiasVector, mode: str = EXTERNAL, *,
                seed: int = 0,
                n_guarantee_threshold: int | None = None) -> PipelineReport:
    """r-partition with exact part sizes |V_i| = alpha_i*n (largest-remainder
    rounding) built from a biased local search plus a size repair.

    external mode minimizes sum e(U_i)/alpha_i: at the local optimum every
    vertex satisfies d_outside(x) >= (1-alpha_i)*d(x) exactly.  internal mode
    maximizes the same objective, giving d_own(x) >= alpha_i*d(x) for
    vertices in parts of size >= 2.  The repair moves lowest-degree vertices
    from oversized to undersized parts and can break the local-optimum
    inequalities, so the report keeps the certified pre-repair values apart
    from the measured post-repair values.
    """
    if mode not in (INTERNAL, EXTERNAL):
        raise ValueError(f"mode must be internal or external, got {mode!r}")
    targets = _target_sizes(bias, graph.n)
    maximize = mode == INTERNAL
    result = biased_max_r_cut(graph, bias, seed=seed, maximize=maximize)
    violations = check_biased_local_min(graph, result.labels, bias,
                                        maximize=maximize)
    pre_stats = partition_stats(graph, result.labels, bias.r)
    pre_certified = not violations

    labels = result.labels.copy()
    sizes = np.bincount(labels, minlength=bias.r).tolist()
    deltas = [s - t for s, t in zip(sizes, targets)]
    # movers: lowest-degree vertices of oversized parts first
    movers = []
    for j in range(bias.r):
        if deltas[j] > 0:
            members = np.nonzero(labels == j)[0]
            order = np.lexsort((members, graph.degree[members]))
            movers.extend(members[order][: deltas[j]].tolist())
    movers.sort(key=lambda v: (int(graph.degree[v]), v))
    for v in movers:
        src = int(labels[v])
        dst = min(range(bias.r), key=lambda q: (sizes[q] - targets[q], q))
        labels[v] = dst
        sizes[src] -= 1
        sizes[dst] += 1
    sizes = np.bincount(labels, minlength=bias.r).tolist()
    assert sizes == targets, f"size repair missed targets: {sizes} vs {targets}"

    claims = [certify.claim_part_sizes(targets)]
    diagnostics = {
        "pre_repair": {"stats": pre_stats, "local_optimum_certified": pre_certified,
                       "objective_start": str(result.objective_start),
                       "objective_end": str(result.objective_end),
                       "moves": result.moves, "violations": len(violations)},
        "repaired_vertices": len(movers),
        "alpha": [str(a) for a in bias.alpha],
        "bias_exact": bias.exact,
    }
    params = {"mode": mode, "alpha": [float(a) for a in bias.alpha],
              "r": bias.r}
    report = _make_report(graph, "rpart", params, labels, bias.r, claims, True,
                          _guarantee(True, True, graph.n, n_guarantee_threshold),
                          seed, diagnostics)
    _assert_self_verifies(graph, report)
    return report


# -- self-check --------------------------------------------------------------


def _assert_self_verifies(graph: Graph, report: PipelineReport) -> None:
    from .certify import verify_certificate
    res = verify_certificate(graph, report.labels, report.certificate,
                             r=report.r)
    assert res.passed, (
        f"pipeline emitted a certificate its own verifier rejects: "
        f"claim {res.failed_claim} witness {res.witness}")
