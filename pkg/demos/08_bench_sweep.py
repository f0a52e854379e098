"""Benchmark sweeps: pipelines against paired random baselines, to CSV.

Every (entry, seed) run emits a pipeline row plus a baseline row for a
uniformly random bisection of the same graph, so quality always reads
against chance.  Failures become rows, never aborts.

Run:  python demos/08_bench_sweep.py
"""

from degpart.bench import bench_sweep, rows_to_csv_text

manifest = [
    {
        "generator": {"type": "gnp", "n": 1000, "p": 0.05},
        "shape": "bisect", "mode": "internal",
        "eps": 0.25, "d_const": 1.0,
        "seeds": [0, 1, 2, 3, 4],
    },
    {
        "generator": {"type": "gnp", "n": 1000, "p": 0.05},
        "shape": "bisect", "mode": "external",
        "eps": 0.09, "d_const": 1.0,
        "seeds": [0, 1, 2, 3, 4],
    },
]

rows = bench_sweep(manifest)
print(rows_to_csv_text(rows))

pipe = [r for r in rows if r["row_kind"] == "pipeline" and r["mode"] == "internal"]
base = [r for r in rows if r["row_kind"] == "baseline" and r["mode"] == "internal"]
mean = lambda rs, key: sum(r[key] for r in rs) / len(rs)
print(f"internal pipeline mean min-own-ratio: {mean(pipe, 'min_own_ratio'):.4f}")
print(f"paired random baseline:               {mean(base, 'min_own_ratio'):.4f}")
print(f"stage success rate: {sum(r['ok'] for r in pipe)}/{len(pipe)}")
