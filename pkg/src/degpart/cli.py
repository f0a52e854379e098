"""Command-line surface: gen, partition, verify, oracle, bench, thresholds.

Exit codes: 0 success, 1 verification failure, 2 parameter error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, bench, pipelines
from .certify import verify_certificate
from .cuts import BiasVector
from .gen import gen_complete_bipartite, gen_gnp, gen_kuhn_osthus
from .graph import GraphFormatError, load_graph
from .oracle import OBJECTIVES, best_bisection, ko_bisection_exists
from .pipelines import PipelineReport
from .thresholds import EXTERNAL, INTERNAL, ParamSet, build_threshold_table

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_PARAM = 2


def _read_graph(path: str):
    with open(path) as fh:
        return load_graph(fh)


def _parse_d_const(text: str) -> float | None:
    if text == "paper":
        return None
    return float(text)


def _cmd_gen(args) -> int:
    if args.type == "gnp":
        graph = gen_gnp(args.n, args.p, args.seed)
    elif args.type == "ko":
        graph = gen_kuhn_osthus(args.n, args.l)
    elif args.type == "kbipartite":
        graph = gen_complete_bipartite(args.a, args.b)
    else:
        raise ValueError(f"unknown generator {args.type!r}")
    text = graph.to_edge_list_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_partition(args) -> int:
    graph = _read_graph(args.graph)
    d_const = _parse_d_const(args.d_const)
    common = {"seed": args.seed, "attempts": args.retries}
    if args.size_window:
        lo, hi = args.size_window.split(":")
        common["size_window"] = (float(lo), float(hi))
    if args.vacuous_windows:
        common["size_window"] = "vacuous"
        common["weight_budget"] = "vacuous"
    stage_log_fh = open(args.stage_log, "w") if args.stage_log else None
    if stage_log_fh is not None and args.shape == "bisect":
        common["stage_log"] = stage_log_fh
    if args.shape == "bisect":
        if args.mode == "int":
            params = ParamSet(args.c, args.eps, INTERNAL, d_const=d_const)
            report = pipelines.bisect_internal(graph, params, **common)
        else:
            params = ParamSet(args.c, args.eps, EXTERNAL, d_const=d_const)
            report = pipelines.bisect_external(graph, params, **common)
    elif args.shape == "tripart":
        mode = INTERNAL if args.mode == "int" else EXTERNAL
        # the integer-floor construction accepts eps up to 1-c; the derived
        # run parameter always satisfies the mode cap
        params = ParamSet(args.c, args.eps, mode, d_const=d_const, relaxed=True)
        report = pipelines.tripartition_exact(graph, args.k, params, **common)
    elif args.shape == "rpart":
        alpha = tuple(args.alpha.split(","))
        mode = INTERNAL if args.mode == "int" else EXTERNAL
        report = pipelines.r_partition(graph, BiasVector(alpha), mode,
                                       seed=args.seed)
    elif args.shape == "dual":
        primary = INTERNAL if args.mode == "int" else EXTERNAL
        report = pipelines.bisect_dual(graph, args.k, args.eps, primary,
                                       d_const=d_const, **common)
    elif args.shape == "cutavg":
        report = pipelines.bisect_with_cut_average(graph, args.k, args.eps,
                                                   d_const=d_const, **common)
    else:
        raise ValueError(f"unknown shape {args.shape!r}")
    if stage_log_fh is not None:
        stage_log_fh.close()
    payload = json.dumps(report.to_jsonable(), indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    print(f"ok={report.ok} guaranteed={report.guaranteed} "
          f"stats={report.stats['min_own_degree']}/{report.stats['min_cross_degree']}",
          file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VERIFY_FAIL


def _cmd_verify(args) -> int:
    graph = _read_graph(args.graph)
    with open(args.cert) as fh:
        report = PipelineReport.from_jsonable(json.load(fh))
    result = verify_certificate(graph, report.labels, report.certificate,
                                r=report.r)
    if result.passed:
        print("PASS: all claims verified")
        return EXIT_OK
    print(f"FAIL: claim #{result.failed_index} {result.failed_claim} "
          f"(witness vertex {result.witness})")
    return EXIT_VERIFY_FAIL


def _cmd_oracle(args) -> int:
    if args.ko:
        n, l, k = args.ko
        answer = ko_bisection_exists(n, l, k)
        print(json.dumps(answer))
        return EXIT_OK
    graph = _read_graph(args.graph)
    value, witness = best_bisection(graph, args.objective)
    print(json.dumps({"objective": args.objective, "value": float(value),
                      "labels": witness.tolist()}))
    return EXIT_OK


def _cmd_bench(args) -> int:
    with open(args.manifest) as fh:
        manifest = json.load(fh)
    rows = bench.bench_sweep(manifest, workers=args.workers,
                             emit_labels=args.emit_labels)
    if args.out:
        bench.write_csv(rows, args.out)
    else:
        sys.stdout.write(bench.rows_to_csv_text(rows))
    return EXIT_OK


def _cmd_thresholds(args) -> int:
    mode = INTERNAL if args.mode == "int" else EXTERNAL
    params = ParamSet(args.c, args.eps, mode,
                      d_const=_parse_d_const(args.d_const),
                      relaxed=args.relaxed)
    lo, hi = (int(x) for x in args.degrees.split(":"))
    table = build_threshold_table(params, range(lo, hi + 1))
    text = table.dump_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degpart",
        description="degree-constrained graph partitioning engine")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph as edge-list text")
    p.add_argument("--type", choices=["gnp", "ko", "kbipartite"], required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("partition", help="run a partitioning pipeline")
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", choices=["int", "ext"], default="int")
    p.add_argument("--shape", choices=["bisect", "tripart", "rpart", "dual",
                                       "cutavg"], default="bisect")
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--alpha", default="1/2,1/2",
                   help="comma-separated rationals for rpart, e.g. 1/5,3/10,1/2")
    p.add_argument("--d-const", default="paper",
                   help="'paper' selects the built-in default; otherwise a positive real")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--retries", type=int, default=64)
    p.add_argument("--size-window", default="",
                   help="lo:hi override for the stage-one size window")
    p.add_argument("--vacuous-windows", action="store_true",
                   help="disable stage-one windows (diagnostic runs)")
    p.add_argument("--stage-log",
                   help="write per-attempt stage-one diagnostics (JSON lines)")
    p.add_argument("--out", help="write the full report JSON here")
    p.set_defaults(func=_cmd_partition)

    p = sub.add_parser("verify", help="re-verify a report's certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--cert", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="exact answers on small graphs")
    p.add_argument("--graph")
    p.add_argument("--objective", choices=list(OBJECTIVES),
                   default="min-own-degree")
    p.add_argument("--ko", nargs=3, type=int, metavar=("N", "L", "K"),
                   help="existence check on the set-inclusion graph")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("bench", help="run a manifest sweep to CSV")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--emit-labels", action="store_true")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("thresholds", help="dump a threshold table as CSV")
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--mode", choices=["int", "ext"], default="int")
    p.add_argument("--d-const", default="paper")
    p.add_argument("--degrees", default="1:100", help="lo:hi inclusive range")
    p.add_argument("--relaxed", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_thresholds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, GraphFormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
