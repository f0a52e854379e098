import json
from math import comb

import numpy as np
import pytest

from degpart import bench, cli
from degpart.gen import (gen_complete_bipartite, gen_gnp, gen_kuhn_osthus)
from degpart.pipelines import partition_stats


def test_gnp_edge_extremes():
    assert gen_gnp(20, 0.0, seed=1).m == 0
    g = gen_gnp(10, 1.0, seed=1)
    assert g.m == comb(10, 2)


def test_gnp_deterministic_and_windowed():
    a = gen_gnp(100, 0.5, seed=42)
    b = gen_gnp(100, 0.5, seed=42)
    ua, va = a.edge_array()
    ub, vb = b.edge_array()
    assert ua.tolist() == ub.tolist() and va.tolist() == vb.tolist()
    # binomial window around 2475 (sd ~ 35, window set generously)
    assert abs(a.m - 2475) <= 300


def test_kuhn_osthus_4_2_profile():
    g = gen_kuhn_osthus(4, 2)
    assert g.n == 10 and g.m == 12
    assert (g.degree[:4] == 3).all()       # C(3,1) per ground vertex
    assert (g.degree[4:] == 2).all()       # l per subset vertex
    assert int(g.degree.min()) == 2        # minimum degree is l


def test_kuhn_osthus_degenerate_single_subset():
    g = gen_kuhn_osthus(3, 3)
    assert g.n == 4
    assert g.degree.tolist() == [1, 1, 1, 3]


def test_kuhn_osthus_degree_closed_form():
    for n, l in [(5, 2), (6, 3), (5, 1)]:
        g = gen_kuhn_osthus(n, l)
        assert (g.degree[:n] == comb(n - 1, l - 1)).all()
        assert (g.degree[n:] == l).all()


def test_kuhn_osthus_size_guard():
    with pytest.raises(ValueError):
        gen_kuhn_osthus(40, 20)


def test_complete_bipartite_profile():
    g = gen_complete_bipartite(3, 5)
    assert sorted(g.degree.tolist(), reverse=True) == [5, 5, 5, 3, 3, 3, 3, 3]
    assert gen_complete_bipartite(2, 2).m == 4  # C4
    assert gen_complete_bipartite(1, 3).degree.tolist() == [3, 1, 1, 1]


def test_bench_empty_manifest_header_only():
    rows = bench.bench_sweep([])
    assert rows == []
    text = bench.rows_to_csv_text(rows)
    assert text.splitlines() == [",".join(bench.COLUMNS)]


def test_bench_k4_row_vacuous_min_ratio():
    manifest = [{"generator": {"type": "gnp", "n": 4, "p": 1.0},
                 "shape": "bisect", "mode": "internal", "seeds": [0]}]
    rows = bench.bench_sweep(manifest)
    assert len(rows) == 2
    pipe = [r for r in rows if r["row_kind"] == "pipeline"][0]
    base = [r for r in rows if r["row_kind"] == "baseline"][0]
    assert pipe["ok"] and pipe["min_own_ratio"] == pytest.approx(1 / 3)
    assert base["min_own_ratio"] == pytest.approx(1 / 3)


def test_bench_rows_recomputable_from_emitted_labels():
    manifest = [{"generator": {"type": "gnp", "n": 30, "p": 0.3},
                 "shape": "bisect", "mode": "internal", "seeds": [1]}]
    rows = bench.bench_sweep(manifest, emit_labels=True)
    pipe = [r for r in rows if r["row_kind"] == "pipeline"][0]
    g = bench.build_graph({"type": "gnp", "n": 30, "p": 0.3, "seed": 1})
    labels = np.array([int(x) for x in pipe["labels"].split()])
    stats = partition_stats(g, labels, 2)
    assert stats["min_own_degree"] == pipe["min_own_degree"]
    assert stats["cut_edges"] == pipe["cut_edges"]


def test_bench_failures_become_rows():
    manifest = [{"generator": {"type": "nonsense"}, "seeds": [0]}]
    rows = bench.bench_sweep(manifest)
    assert len(rows) == 1 and rows[0]["error"]


def test_bench_csv_write(tmp_path):
    manifest = [{"generator": {"type": "gnp", "n": 10, "p": 0.5},
                 "shape": "bisect", "mode": "internal", "seeds": [0, 1]}]
    rows = bench.bench_sweep(manifest)
    out = tmp_path / "rows.csv"
    bench.write_csv(rows, out)
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(bench.COLUMNS)
    assert len(lines) == 1 + len(rows)


def test_cli_gen_and_partition_and_verify(tmp_path):
    gpath = tmp_path / "g.txt"
    cpath = tmp_path / "cert.json"
    assert cli.main(["gen", "--type", "gnp", "--n", "30", "--p", "0.4",
                     "--seed", "3", "--out", str(gpath)]) == 0
    assert cli.main(["partition", "--graph", str(gpath), "--mode", "int",
                     "--shape", "bisect", "--eps", "0.25", "--seed", "1",
                     "--out", str(cpath)]) == 0
    assert cli.main(["verify", "--graph", str(gpath), "--cert", str(cpath)]) == 0
    # corrupt a label: verification must fail with exit code 1
    payload = json.loads(cpath.read_text())
    payload["labels"][0] = 1 - payload["labels"][0]
    cpath.write_text(json.dumps(payload))
    assert cli.main(["verify", "--graph", str(gpath), "--cert", str(cpath)]) == 1


def test_cli_parameter_error_exit_code(tmp_path):
    gpath = tmp_path / "g.txt"
    cli.main(["gen", "--type", "gnp", "--n", "10", "--p", "0.5",
              "--out", str(gpath)])
    # eps out of range for internal mode -> parameter error
    assert cli.main(["partition", "--graph", str(gpath), "--mode", "int",
                     "--shape", "bisect", "--eps", "0.7"]) == 2
    assert cli.main(["oracle", "--graph", str(gpath),
                     "--objective", "min-own-degree"]) == 0


def test_cli_thresholds_and_bench(tmp_path):
    out = tmp_path / "t.csv"
    assert cli.main(["thresholds", "--eps", "0.25", "--d-const", "1",
                     "--degrees", "1:10", "--out", str(out)]) == 0
    assert out.read_text().startswith("i,phi,psi")
    manifest = tmp_path / "m.json"
    manifest.write_text(json.dumps(
        [{"generator": {"type": "gnp", "n": 12, "p": 0.5},
          "shape": "bisect", "mode": "internal", "seeds": [0]}]))
    rows_out = tmp_path / "rows.csv"
    assert cli.main(["bench", "--manifest", str(manifest),
                     "--out", str(rows_out)]) == 0
    assert rows_out.read_text().count("\n") == 3  # header + 2 rows


def test_cli_ko_oracle():
    assert cli.main(["oracle", "--ko", "4", "2", "1"]) == 0
