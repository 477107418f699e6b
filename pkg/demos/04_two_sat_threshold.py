"""Locate the 2-SAT threshold 1/(1-4b^2) by bisection.

Uses n = 20 000 to keep the run short; the acceptance suite runs n = 10^5.
"""

from biased_ksat import harness as H
from biased_ksat.bounds import alpha2

for p in (0.5, 0.4, 0.25):
    cfg = H.ExperimentConfig(k=2, p=p, n=20_000, trials=100, solver="two_sat", base_seed=4)
    est = H.threshold_bisect(cfg)
    print(f"p={p}: alpha_hat={est.alpha_hat:.3f} +- {est.ci:.3f}   exact {alpha2(p):.3f}")

cfg = H.ExperimentConfig(k=3, p=0.5, n=30, trials=200, solver="dpll", base_seed=4)
for row in H.sat_curve(cfg, [2.0, 3.0, 4.0, 5.0, 6.0]):
    print(f"k=3 density {row.density:.1f}: Pr(sat) {row.freq:.2f} [{row.lo:.2f}, {row.hi:.2f}]")
