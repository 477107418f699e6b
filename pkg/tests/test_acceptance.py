"""Acceptance criteria, each run at its stated size and tolerance.

Every test prints one ``AC<n> PASS|FAIL: ...`` line (collected again in the
pytest terminal summary).  Run alone with ``pytest tests/test_acceptance.py``
or ``python3 tests/test_acceptance.py``; the whole file takes roughly 20
minutes on one core.
"""

import math
import sys
import time
from fractions import Fraction

import numpy as np
import pytest
from numpy.polynomial import Polynomial

from biased_ksat import bounds as B
from biased_ksat import harness as H
from biased_ksat import kk, liquid
from biased_ksat.formula import sample_formula, sample_formula_lits
from biased_ksat.rng import derive_seed, make_rng
from biased_ksat.russo import pivotal_rho_estimate, russo_check
from biased_ksat.solvers import brute_spine, spine_set, ucp_run
from biased_ksat.solvers.ucp import ucp_kernel
from oracles import clause_table, forbids, layer, monte_carlo_ratio, pair_sum_ratio, shifted_max_upper

pytestmark = pytest.mark.acceptance


def _timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


# AC1 -------------------------------------------------------------------------

@pytest.mark.parametrize("p,target,tol", [(0.5, 1.0, 0.05), (0.25, 4 / 3, 0.07)])
def test_ac1_two_sat_threshold(report, p, target, tol):
    cfg = H.ExperimentConfig(2, p, 10**5, 200, "two_sat", base_seed=2024, tol=0.02)
    est, secs = _timed(H.threshold_bisect, cfg)
    ok = abs(est.alpha_hat - target) <= tol and secs <= 600
    report(f"AC1[p={p}]", ok,
           f"alpha_hat={est.alpha_hat:.4f} (ci {est.ci:.4f}) target {target:.4f} +- {tol}, {secs:.0f}s")
    assert ok


# AC2 -------------------------------------------------------------------------

def _ucp_success_rate(n, m, runs, base):
    starts = np.arange(0, 3 * m + 1, 3, dtype=np.int64)
    wins = 0
    for j in range(runs):
        lits = sample_formula_lits(n, 3, 0.5, m, "discrete", derive_seed(base, j)).ravel()
        u = make_rng(derive_seed(base, j, 1)).random(2 * n + 2)
        wins += ucp_kernel(n, 3, lits, starts, 0.5, u)[0] < 0
    return wins / runs


def test_ac2_ucp_success(report):
    n, runs = 10**4, 1000
    t = time.perf_counter()
    lo = _ucp_success_rate(n, int(0.4 * n), runs, 7)
    hi = _ucp_success_rate(n, int(0.6 * n), runs, 7)
    secs = time.perf_counter() - t
    ok = lo >= 0.10 and hi < lo and secs <= 300
    report("AC2", ok, f"success {lo:.3f} at m=0.4n, {hi:.3f} at m=0.6n, {secs:.0f}s")
    assert ok


# AC3 -------------------------------------------------------------------------

def test_ac3_false_count_law(report):
    n, p, runs = 1000, 0.3, 10**4
    m = int(0.3 * n)
    false = []
    for j in range(runs):
        f = sample_formula(n, 3, p, m, seed=derive_seed(3, j))
        out = ucp_run(f, p, derive_seed(3, j, 1))
        if out.success:
            false.append(int((out.assignment == -1).sum()))
    false = np.array(false)
    var = n * p * (1 - p)
    mean_ok = abs(false.mean() - n * p) <= 3 * math.sqrt(var)
    var_ok = abs(false.var(ddof=1) / var - 1) <= 0.15
    report("AC3", mean_ok and var_ok,
           f"{false.size} successes; mean {false.mean():.2f} vs {n * p:.0f}, "
           f"variance {false.var(ddof=1):.1f} vs {var:.1f}")
    assert mean_ok and var_ok


# AC4 -------------------------------------------------------------------------

def test_ac4_liquid_model(report):
    err = liquid.integrate(3, 0.5, 1.0, 0.9, 1e-3).max_error(1.0, 0.5)
    tr, secs = _timed(liquid.empirical_trajectory, 10**5, 3, 0.5, 0.4, 20, seed=4)
    sup = tr.sup_error()
    ok = err <= 1e-6 and sup <= 0.01 and tr.conservation_ok() and secs <= 300
    report("AC4", ok, f"RK4 max error {err:.2e}; empirical sup error {sup:.2e} at n=1e5, {secs:.0f}s")
    assert ok


# AC5 -------------------------------------------------------------------------

def test_ac5_moment_formulas(report):
    half = Fraction(1, 2)
    q_ok = all(
        B.q_exact(i, n, k, half) == Fraction(1, 2**k)
        for n in range(1, 31) for k in range(n + 1) for i in range(n + 1)
    )
    worst = 0.0
    for n in range(1, 11):
        for k in range(1, min(3, n) + 1):
            for p in (Fraction(1, 4), half):
                cl, w = clause_table(n, k, p)
                for i in range(n + 1):
                    vs = layer(n, i)
                    u = vs[0]
                    cov_u = [forbids(c, u) for c in cl]
                    done = set()
                    for v in vs:
                        h = int((u != v).sum())
                        if h in done:
                            continue
                        done.add(h)
                        ref = sum(wi for c, wi, cu in zip(cl, w, cov_u) if cu and forbids(c, v))
                        worst = max(worst, abs(float(B.pair_q_exact(i, n, h, k, p)) - float(ref)))
    val = B.second_moment_ratio(5, 10, 3, 0.5, 2.0)
    brute = pair_sum_ratio(10, 5, 3, half, 2.0)
    est, se = monte_carlo_ratio(10, 5, 3, half, 2.0, 10**5, make_rng(5))
    ok = q_ok and worst <= 1e-12 and abs(val - brute) <= 1e-10 and abs(est - val) <= 3 * se
    report("AC5", ok,
           f"q=2^-k exact: {q_ok}; pair_q worst error {worst:.1e}; ratio {val:.10f} vs pair-sum "
           f"{brute:.10f}; Monte Carlo {est:.5f} +- {se:.5f}")
    assert ok


# AC6 -------------------------------------------------------------------------

def test_ac6_c_p_sandwich(report):
    bad = []
    for k in range(3, 11):
        for p in np.round(np.arange(0.05, 0.4501, 0.05), 2):
            x0, cp = B.c_p_maximize(k, float(p))
            xm, xp = B.x_bounds(k, float(p))
            lo = B.entropy(xp) * B.eta(p, xp) ** (-k)
            hi = B.entropy(xp) * B.eta(p, xm) ** (-k)
            if not (xm < x0 < xp and lo <= cp < hi):
                bad.append((k, float(p)))
    x0, cp = B.c_p_maximize(3, 0.5)
    half_ok = all(
        abs(B.c_p_maximize(k, 0.5)[1] - 2**k * math.log(2)) <= 1e-6
        and abs(B.c_p_maximize(k, 0.5)[0] - 0.5) <= 1e-6
        for k in range(3, 11)
    )
    ok = not bad and half_ok
    report("AC6", ok, f"{8 * 9 - len(bad)}/72 grid points inside the sandwich; p=1/2 anchors ok: {half_ok}")
    assert ok


# AC7 -------------------------------------------------------------------------

def test_ac7_kruskal_katona(report):
    t = time.perf_counter()
    recon = all(kk.cascade_decompose(N, r).N == N for r in range(1, 7) for N in range(1, 10**4 + 1))
    shadow = all(kk.kk_bound(N, r) == shifted_max_upper(N, r) for r in range(1, 4) for N in range(1, 31))
    minw = all(
        kk.min_w_brute(d, b)[0] == 2 * b for d in range(1, 5) for b in (Fraction(1, 10), Fraction(1, 20))
    )
    secs = time.perf_counter() - t
    ok = recon and shadow and minw and secs <= 120
    report("AC7", ok, f"reconstruction {recon}, shadow vs shifted-family search {shadow}, "
                      f"min w = 2b exactly {minw}, {secs:.0f}s")
    assert ok


# AC8 -------------------------------------------------------------------------

def _third_derivative_bound(X, d, lo, hi):
    h = np.array([bin(x).count("1") for x in range(1 << d)])
    poly = Polynomial([0.0])
    for x, v in enumerate(X):
        poly = poly + v * Polynomial([0, 1]) ** (d - h[x]) * Polynomial([1, -1]) ** h[x]
    grid = np.linspace(lo, hi, 33)
    return float(np.abs(poly.deriv(3)(grid)).max())


def test_ac8_russo_tables(report):
    rng = make_rng(8)
    dp = 1e-3
    worst = 0.0
    for _ in range(100):
        d = int(rng.integers(1, 9))
        X = rng.normal(size=1 << d)
        p = float(rng.uniform(0.1, 0.9))
        rep = russo_check(X, p, dp)
        err = abs(abs(rep.pivotal_sum) - abs(rep.numeric_derivative))
        # central difference truncation dp^2/6 |E'''| plus rounding
        bound = dp**2 / 6 * _third_derivative_bound(X, d, p - dp, p + dp) + 1e-12 * np.abs(X).sum() / dp
        worst = max(worst, err / bound if bound else 0.0)
    ok = worst <= 1.0
    report("AC8[russo]", ok, f"100 tables, worst |error| / (dp^2 |E'''|/6) = {worst:.3f}")
    assert ok


@pytest.fixture(scope="module")
def pivotal():
    return _timed(pivotal_rho_estimate, 30, 3, 0.45, 4.0, 10**6, seed=8)


def test_ac8_pivotal_identity(report, pivotal):
    est, secs = pivotal
    ok = est.identity_holds and est.violations == 0 and secs <= 1200
    report("AC8[identity]", ok,
           f"rho={est.rho:.5f}, (1/2+b)rho+ + (1/2-b)rho- gap {est.identity_gap:.2e} +- {est.identity_ci:.2e}; "
           f"{est.verified} events verified, {est.violations} violations, {secs:.0f}s")
    assert ok


@pytest.mark.xfail(strict=True, reason="printed inequality has the sign of the b-derivative reversed")
def test_ac8_pivotal_ratio_as_stated(report, pivotal):
    est, _ = pivotal
    ok = est.ratio >= 4 * est.b - est.ratio_ci
    report("AC8[ratio as stated]", ok,
           f"(rho+ - rho-)/rho = {est.ratio:.4f} +- {est.ratio_ci:.4f} vs 4b = {4 * est.b:.2f}")
    assert ok


def test_ac8_pivotal_ratio_sign_corrected(report, pivotal):
    est, _ = pivotal
    flipped = (est.rho_minus - est.rho_plus) / est.rho
    ok = flipped >= 4 * est.b - est.ratio_ci
    report("AC8[ratio sign-corrected]", ok,
           f"(rho- - rho+)/rho = {flipped:.4f} +- {est.ratio_ci:.4f} vs 4b = {4 * est.b:.2f}")
    assert ok


# AC9 -------------------------------------------------------------------------

def test_ac9_spine(report):
    biased = H.spine_experiment(H.ExperimentConfig(3, 0.45, 30, 10**5, "dpll", "poisson", 9, t=4.0))
    fair = H.spine_experiment(H.ExperimentConfig(3, 0.5, 30, 5 * 10**4, "dpll", "poisson", 9, t=4.0))
    rng = make_rng(9)
    agree = checked = 0
    while checked < 1000:
        n = int(rng.integers(5, 16))
        f = sample_formula(n, 3, float(rng.uniform(0.3, 0.5)), int(rng.integers(0, 5 * n)), seed=int(rng.integers(2**62)))
        ref = brute_spine(f)
        if ref is None:
            continue
        sp = spine_set(f)
        agree += (set(sp.s_plus), set(sp.s_minus)) == ref
        checked += 1
    ok = (biased.fraction_true >= 0.55 - biased.ci and abs(fair.fraction_true - 0.5) <= fair.ci
          and agree == checked)
    report("AC9", ok,
           f"locked-TRUE {biased.fraction_true:.4f} +- {biased.ci:.4f} at b=0.05; "
           f"{fair.fraction_true:.4f} +- {fair.ci:.4f} at b=0; spine_set = brute force on {agree}/{checked}")
    assert ok


# AC10 ------------------------------------------------------------------------

def test_ac10_parabola_k2(report):
    rows = H.parabola_experiment(2, [0.1, 0.2], 2 * 10**4, 200, base_seed=10)
    checks = [(r.b, r.ratio, r.ratio_ci, r.exact) for r in rows if r.b > 0]
    ok = all(abs(r - e) <= ci for _, r, ci, e in checks)
    report("AC10[k=2]", ok, "; ".join(f"b={b}: {r:.4f} +- {ci:.4f} vs {e:.4f}" for b, r, ci, e in checks))
    assert ok


def test_ac10_parabola_k3(report):
    rows = H.parabola_experiment(3, [0.1, 0.2], 40, 400, base_seed=10, tol=0.05)
    ratio = {r.b: (r.ratio, r.ratio_ci) for r in rows}
    r1, c1 = ratio[0.1]
    r2, c2 = ratio[0.2]
    ok = r1 >= 1 - c1 and r2 >= r1 - math.hypot(c1, c2)
    report("AC10[k=3]", ok, f"n=40 ratios: b=0.1 {r1:.3f} +- {c1:.3f}, b=0.2 {r2:.3f} +- {c2:.3f}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
