"""First-moment upper bounds c_p and how they move with the bias."""

import math

from biased_ksat import bounds as B

print(" k    p     x0      c_p      2^k ln2   alpha2   ucp")
for k in (3, 4, 5):
    for p in (0.5, 0.4, 0.3, 0.2):
        x0, cp = B.c_p_maximize(k, p)
        print(f"{k:2d}  {p:.2f}  {x0:.4f}  {cp:8.3f}  {2**k * math.log(2):8.3f}  "
              f"{B.alpha2(p):6.3f}  {B.ucp_bound(k, p):6.3f}")

# exact finite-n value against the asymptotic rate at the maximiser
x0, _ = B.c_p_maximize(3, 0.4)
for n in (100, 1000, 10_000):
    print(f"n={n:6d}: c_px exact {B.c_px(x0, n, 3, 0.4, 'exact'):.4f}, asym {B.c_px(x0, n, 3, 0.4):.4f}")

print("second moment ratio at i=5, n=10, k=3, m=2:", B.second_moment_ratio(5, 10, 3, 0.5, 2.0))
print("full report:", B.closed_form_bounds(3, 0.4).to_dict())
