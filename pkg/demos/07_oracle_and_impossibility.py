"""Brute-force ground truth, and the set-inclusion family where joint
own/cross floors fail.

The oracle enumerates every bisection of a small graph and reports the exact
maximin value of a degree statistic; heuristic pipelines can never beat it.
The inclusion graph (ground set [n] versus its l-subsets) has minimum degree
l, yet asking simultaneously for an own-part neighbor everywhere plus a
cross neighbor on one whole side is already unsatisfiable at desk scale.

Run:  python demos/07_oracle_and_impossibility.py
"""

from degpart import (best_bisection, bisect_internal, gen_gnp,
                     gen_kuhn_osthus, ko_bisection_exists)

g = gen_gnp(12, 0.4, seed=21)
for objective in ("min-own-degree", "min-cross-degree"):
    value, witness = best_bisection(g, objective)
    print(f"{objective}: optimal bisection value {value}")

rep = bisect_internal(g, seed=21, size_window=(0, 6), weight_budget="vacuous")
oracle_value, _ = best_bisection(g, "min-own-degree")
print(f"pipeline min own-degree {rep.stats['min_own_degree']} "
      f"<= oracle {oracle_value}")

print("\ninclusion graph on [4] and its 2-subsets:")
ko = gen_kuhn_osthus(4, 2)
print("  ", ko, "degrees", sorted(set(ko.degree.tolist())))
for k in (0, 1):
    ans = ko_bisection_exists(4, 2, k)
    print(f"  joint floors at k={k}: exists={ans['exists']} "
          f"(checked {max(ans['refuted'], 1)} oriented splits)")
ans5 = ko_bisection_exists(5, 2, 1)
print(f"  n=5, l=2, k=1: exists={ans5['exists']} "
      f"(exhausted {ans5['refuted']} oriented splits)")
