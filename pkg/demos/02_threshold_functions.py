"""The per-degree threshold functions and the series constant behind them.

A vertex of degree i is asked to keep floor(phi(i)) neighbors on its own
side (internal mode) or floor(psi(i)) across (external mode), where

    phi(i) = ((1-c)/4) i - (2 d i^((1+eps)/2) + eps i).

The constant d defaults to 1000/eps^2, which makes the series
sum_i i*exp(-d^2 i^eps) provably tiny - that series bounds how much weight
the randomized stage can leave on under-served vertices.  The default is
astronomically conservative, so thresholds only activate for astronomically
large degrees; runs at desk scale override d ("diagnostic mode") and the
certificate records which constant was used.

Run:  python demos/02_threshold_functions.py
"""

import numpy as np

from degpart import ParamSet, build_threshold_table, verify_series_bound
from degpart.thresholds import default_d_constant

# The series bound that justifies the default constant, checked numerically
# with a rigorous tail bound (60-digit arithmetic, no float shortcuts).
for eps in (0.05, 0.1, 0.25, 0.5):
    d = default_d_constant(0.0, eps, "internal")
    res = verify_series_bound(d, eps)
    print(f"eps={eps:<5} d={d:>9.0f}  partial+tail <= {res.target:.2e}: {res.holds}")

# A constant that is far too small fails immediately:
bad = verify_series_bound(0.001, 0.5)
print(f"d=0.001: partial sum {bad.partial_sum:.3f} vs target {bad.target:.1e} "
      f"-> holds={bad.holds}")

# With an override of d=1, activity starts at moderate degrees.
params = ParamSet(0.0, 0.09, "external", d_const=1.0)
table = build_threshold_table(params, range(1, 2001))
first_active = int(table.degrees[table.active][0])
print(f"\n(c=0, eps=0.09, d=1): first active degree = {first_active}")
k = int(table.row_index(np.array([1000]))[0])
print(f"degree 1000: phi={table.phi[k]:.2f} psi*={table.psi_star[k]:.2f} "
      f"eta={table.eta[k]:.4f} goodness thr (ext) = {table.thr_ext[k]:.2f}")

# The whole table dumps as CSV (same schema as `degpart thresholds`).
print("\nfirst rows of the CSV dump:")
print("\n".join(table.dump_csv().splitlines()[:4]))
