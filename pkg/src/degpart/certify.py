"""Certificates and from-scratch re-verification.

A certificate is a list of claims about a (graph, labeling) pair, each
re-checkable from the pair alone: nothing in the verifier trusts the
producer.  Degree claims are verified in exact integer arithmetic; real
thresholds enter only through their floors, which the verifier recomputes
itself from the recorded parameters.  The certificate binds to the exact
graph through an order-independent hash of the sorted edge set.

Claim kinds:

    part_size_window   part j size within [lo, hi]
    part_sizes         exact part sizes
    balance            max part-size difference (bisections: 1)
    degree_floor       every vertex in scope meets a floor on its degree
                       into a target ("own", "cross" = everything outside
                       its own part, or an explicit part index); the floor
                       is a constant or floor(factor * fn(degree)) from a
                       recorded threshold table, applied to active vertices
    cut_edges_at_least edge count between two parts is at least a bound
    count_meeting_floor  at least N vertices meet a constant floor
    extremal_stat      the min over vertices of a degree stat equals a value
    extremal_ratio     the min over positive-degree vertices of stat/degree
                       equals num/den (compared cross-multiplied, exactly)
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, part_profile
from .thresholds import ParamSet, build_threshold_table


def graph_fingerprint(graph: Graph) -> str:
    """Order-independent hash of (n, sorted edge set)."""
    u, v = graph.edge_array()
    h = hashlib.sha256()
    h.update(f"n={graph.n};".encode())
    h.update(np.stack([u, v]).astype("<i8").tobytes())
    return h.hexdigest()


@dataclass
class Certificate:
    graph_hash: str
    params: dict
    seed: int | None
    version: str
    claims: list = field(default_factory=list)

    def to_jsonable(self) -> dict:
        return {"graph_hash": self.graph_hash, "params": self.params,
                "seed": self.seed, "version": self.version, "claims": self.claims}

    @classmethod
    def from_jsonable(cls, d: dict) -> "Certificate":
        return cls(d["graph_hash"], d.get("params", {}), d.get("seed"),
                   d.get("version", ""), list(d.get("claims", [])))


@dataclass
class VerifyResult:
    passed: bool
    failed_index: int | None = None
    failed_claim: dict | None = None
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.passed


# -- claim constructors ------------------------------------------------------


def claim_part_size_window(part: int, lo: float, hi: float) -> dict:
    return {"kind": "part_size_window", "part": int(part), "lo": float(lo),
            "hi": float(hi)}


def claim_part_sizes(sizes) -> dict:
    return {"kind": "part_sizes", "sizes": [int(s) for s in sizes]}


def claim_balance(max_diff: int = 1) -> dict:
    return {"kind": "balance", "max_diff": int(max_diff)}


def const_floor(k: int) -> dict:
    return {"type": "const", "value": int(k)}


def table_floor(fn: str, params: ParamSet, factor: int = 1) -> dict:
    return {"type": "table", "fn": fn, "factor": int(factor), "c": params.c,
            "eps": params.eps, "mode": params.mode, "d_const": params.d}


def claim_degree_floor(source, target, floor: dict, witness: int | None = None) -> dict:
    return {"kind": "degree_floor", "source": source, "target": target,
            "floor": floor, "witness": witness}


def claim_cut_edges_at_least(bound: int, parts=(0, 1)) -> dict:
    return {"kind": "cut_edges_at_least", "bound": int(bound),
            "parts": [int(p) for p in parts]}


def claim_count_meeting_floor(target: str, k: int, at_least: int) -> dict:
    return {"kind": "count_meeting_floor", "target": target,
            "floor": const_floor(k), "at_least": int(at_least)}


def claim_extremal_stat(stat: str, value: int) -> dict:
    return {"kind": "extremal_stat", "stat": stat, "value": int(value)}


def claim_extremal_ratio(stat: str, num: int, den: int) -> dict:
    return {"kind": "extremal_ratio", "stat": stat, "num": int(num),
            "den": int(den)}


# -- verification ------------------------------------------------------------


class _Context:
    """Recomputed quantities shared across the claims of one verification."""

    def __init__(self, graph: Graph, labels: np.ndarray, r: int):
        self.graph = graph
        self.labels = labels
        self.r = r
        self.counts = part_profile(graph, labels, r)
        self.own = self.counts[np.arange(graph.n), labels]
        self.cross = graph.degree - self.own
        self.sizes = np.bincount(labels, minlength=r)
        self._tables: dict = {}

    def stat(self, target) -> np.ndarray:
        if target == "own":
            return self.own
        if target == "cross":
            return self.cross
        return self.counts[:, int(target)]

    def floors(self, floor: dict) -> tuple[np.ndarray, np.ndarray]:
        """(floor value per vertex, active mask per vertex)."""
        n = self.graph.n
        if floor["type"] == "const":
            return (np.full(n, int(floor["value"]), dtype=np.int64),
                    np.ones(n, dtype=bool))
        params = ParamSet(floor["c"], floor["eps"], floor["mode"],
                          d_const=floor["d_const"], relaxed=True)
        key = (params.c, params.eps, params.mode, params.d)
        if key not in self._tables:
            self._tables[key] = build_threshold_table(
                params, np.unique(self.graph.degree))
        table = self._tables[key]
        rows = table.row_index(self.graph.degree)
        col = {"phi": table.fphi, "psi": table.fpsi}[floor["fn"]]
        return int(floor["factor"]) * col[rows], table.active[rows]


def _check_claim(ctx: _Context, claim: dict) -> tuple[bool, int | None]:
    kind = claim["kind"]
    if kind == "part_size_window":
        ok = claim["lo"] <= int(ctx.sizes[claim["part"]]) <= claim["hi"]
        return ok, None
    if kind == "part_sizes":
        return ctx.sizes.tolist() == list(claim["sizes"]), None
    if kind == "balance":
        ok = int(ctx.sizes.max() - ctx.sizes.min()) <= claim["max_diff"]
        return ok, None
    if kind == "degree_floor":
        stat = ctx.stat(claim["target"])
        floors, active = ctx.floors(claim["floor"])
        if claim["source"] == "all":
            scope = np.ones(ctx.graph.n, dtype=bool)
        else:
            scope = ctx.labels == int(claim["source"])
        bad = scope & active & (stat < floors)
        if bad.any():
            return False, int(np.nonzero(bad)[0][0])
        return True, None
    if kind == "cut_edges_at_least":
        pa, pb = claim["parts"]
        mask = ctx.labels == pa
        cut = int(ctx.counts[mask, pb].sum())
        return cut >= claim["bound"], None
    if kind == "count_meeting_floor":
        stat = ctx.stat(claim["target"])
        k = claim["floor"]["value"]
        return int((stat >= k).sum()) >= claim["at_least"], None
    if kind == "extremal_stat":
        col = {"min_own_degree": ctx.own, "min_cross_degree": ctx.cross}[claim["stat"]]
        if ctx.graph.n == 0:
            return claim["value"] == 0, None
        actual = int(col.min())
        if actual != claim["value"]:
            return False, int(np.argmin(col))
        return True, None
    if kind == "extremal_ratio":
        col = {"own": ctx.own, "cross": ctx.cross}[claim["stat"]]
        num, den = claim["num"], claim["den"]
        pos = ctx.graph.degree > 0
        if not pos.any():
            return den == 0, None
        # ratio comparisons cross-multiplied: col/deg vs num/den
        lhs = col[pos].astype(object) * den
        rhs = num * ctx.graph.degree[pos].astype(object)
        below = lhs < rhs
        if below.any():
            return False, int(np.nonzero(pos)[0][np.nonzero(below)[0][0]])
        achieves = lhs == rhs
        return bool(achieves.any()), None
    raise ValueError(f"unknown claim kind {kind!r}")


def verify_certificate(graph: Graph, partition, cert: Certificate,
                       r: int | None = None) -> VerifyResult:
    """Recompute every claim from scratch against (graph, labels).

    ``partition`` is a LabeledPartition or a bare label array (then ``r``
    defaults to max label + 1, at least 2).  A graph-hash mismatch refuses
    verification outright (ValueError) rather than failing a claim.
    """
    actual = graph_fingerprint(graph)
    if cert.graph_hash != actual:
        raise ValueError(
            f"certificate bound to graph {cert.graph_hash[:12]}..., "
            f"got {actual[:12]}...")
    if hasattr(partition, "labels"):
        labels = np.asarray(partition.labels, dtype=np.int64)
        r = partition.r
    else:
        labels = np.asarray(partition, dtype=np.int64)
        if r is None:
            r = max(2, int(labels.max()) + 1) if labels.size else 2
    ctx = _Context(graph, labels, r)
    for idx, claim in enumerate(cert.claims):
        ok, witness = _check_claim(ctx, claim)
        if not ok:
            return VerifyResult(False, idx, claim, witness)
    return VerifyResult(True)
