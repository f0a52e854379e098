"""Degree-constrained graph partitioning.

Builds bisections, tripartitions and r-partitions of arbitrary graphs in
which every vertex keeps a prescribed fraction of its neighbors inside its
own part (internal mode) or in the opposite part (external mode).  The
constructions follow a two-stage scheme: a randomized tripartition whose
properties are validated deterministically, followed by deterministic
relocation refinements.  Every run emits a certificate that an independent
verifier re-checks from scratch, and a brute-force oracle supplies ground
truth on small instances.
"""

from .graph import Graph, LabeledPartition, load_graph, degree_in_set, cut_and_internal_profile
from .thresholds import (
    ParamSet,
    ThresholdTable,
    default_d_constant,
    verify_series_bound,
    build_threshold_table,
    goodness_threshold,
)
from .dense import ClassFamily, DegreeClass, ExtractResult, compute_a_plus, check_key_condition, extract_dense
from .cuts import BiasVector, local_maxcut, biased_max_r_cut
from .stage1 import StageOneResult, random_tripartition, relocate_bad_from_c, stage_one
from .refine_int import refine_internal_once, min_indegree_tripartition
from .refine_ext import min_outdegree_tripartition
from .pipelines import (
    PipelineReport,
    partition_stats,
    bisect_internal,
    bisect_external,
    tripartition_exact,
    bisect_dual,
    bisect_with_cut_average,
    r_partition,
)
from .certify import Certificate, VerifyResult, graph_fingerprint, verify_certificate
from .oracle import best_bisection, ko_bisection_exists, dense_fixed_point_check
from .gen import gen_gnp, gen_kuhn_osthus, gen_complete_bipartite, complete_graph, cycle_graph, path_graph
from .bench import bench_sweep, write_csv

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "LabeledPartition",
    "load_graph",
    "degree_in_set",
    "cut_and_internal_profile",
    "ParamSet",
    "ThresholdTable",
    "default_d_constant",
    "verify_series_bound",
    "build_threshold_table",
    "goodness_threshold",
    "ClassFamily",
    "DegreeClass",
    "ExtractResult",
    "compute_a_plus",
    "check_key_condition",
    "extract_dense",
    "BiasVector",
    "local_maxcut",
    "biased_max_r_cut",
    "StageOneResult",
    "random_tripartition",
    "relocate_bad_from_c",
    "stage_one",
    "refine_internal_once",
    "min_indegree_tripartition",
    "min_outdegree_tripartition",
    "PipelineReport",
    "partition_stats",
    "bisect_internal",
    "bisect_external",
    "tripartition_exact",
    "bisect_dual",
    "bisect_with_cut_average",
    "r_partition",
    "Certificate",
    "VerifyResult",
    "graph_fingerprint",
    "verify_certificate",
    "best_bisection",
    "ko_bisection_exists",
    "dense_fixed_point_check",
    "gen_gnp",
    "gen_kuhn_osthus",
    "gen_complete_bipartite",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "bench_sweep",
    "write_csv",
]
