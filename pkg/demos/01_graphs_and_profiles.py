"""Tour of the graph layer: ingestion, degree primitives, cut profiles.

Run:  python demos/01_graphs_and_profiles.py
"""

from degpart import (LabeledPartition, cut_and_internal_profile, degree_in_set,
                     gen_gnp, load_graph)

# Graphs load from plain edge lists (or DIMACS "p edge / e u v" streams).
text = """\
# a 5-cycle
0 1
1 2
2 3
3 4
4 0
"""
c5 = load_graph(text)
print("C5:", c5, "degrees", c5.degree.tolist())

# Neighborhood counts into arbitrary vertex sets.
print("neighbors of 0 inside {1, 3}:", degree_in_set(c5, 0, {1, 3}))

# Per-vertex cut profiles: own-part degree plus cross degrees per part.
part = LabeledPartition(2, [0, 0, 0, 1, 1])
d_own, counts = cut_and_internal_profile(c5, part)
for v in range(c5.n):
    print(f"  vertex {v}: own {d_own[v]}, toward part 0 {counts[v,0]}, "
          f"toward part 1 {counts[v,1]}")

# Random graphs are reproducible from their seed.
g = gen_gnp(1000, 0.01, seed=7)
print("G(1000, 0.01):", g, "mean degree", round(float(g.degree.mean()), 2))
assert gen_gnp(1000, 0.01, seed=7).m == g.m

# Serialization round-trips the edge set exactly.
again = load_graph(g.to_edge_list_text())
assert again.m == g.m and again.n == g.n
print("edge-list round trip preserved", g.m, "edges")
