"""UCP's clause census follows a deterministic ODE.

At density c = 0.4 < 4/9 the census S_i(tn)/n of a large random 3-SAT
formula tracks c C(k,i) (2p(1-p) t)^(k-i) (1-t)^i.
"""

import numpy as np

from biased_ksat import liquid
from biased_ksat.bounds import ucp_bound

k, p, c = 3, 0.5, 0.4
print(f"UCP bound at p={p}: {ucp_bound(k, p):.4f}")

ode = liquid.integrate(k, p, c, t_end=0.9, step=1e-3)
print(f"RK4 vs closed form: max error {ode.max_error(c, p):.1e}")

tr = liquid.empirical_trajectory(50_000, k, p, c, runs=5, seed=0)
print(f"empirical vs closed form: sup error {tr.sup_error():.4f}")
print(" t     S2/n    c2(t)   S3/n    c3(t)")
for a, t in enumerate(tr.t):
    print(f"{t:4.1f}  {tr.mean[a, 2]:.4f}  {tr.closed[a, 2]:.4f}  {tr.mean[a, 3]:.4f}  {tr.closed[a, 3]:.4f}")

# a biased run: fewer literals disappear per step, so clauses shrink more slowly
tr = liquid.empirical_trajectory(50_000, k, 0.2, c, runs=3, seed=1)
print(f"p=0.2 sup error {tr.sup_error():.4f}, S_3 at t=0.5: {np.interp(0.5, tr.t, tr.mean[:, 3]):.4f}")
