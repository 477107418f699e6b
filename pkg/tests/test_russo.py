import numpy as np
import pytest

from biased_ksat import russo as R
from biased_ksat.formula import InvalidParameters, sample_formula
from biased_ksat.mc import CHUNK, chunked, draw_formula, pivotal_chunk, spine_chunk
from biased_ksat.rng import make_rng
from biased_ksat.solvers import dpll_sat, spine_set


def test_single_coordinate():
    # X = s_1; index 1 is s_1 = +1
    rep = R.russo_check([-1.0, 1.0], 0.3)
    assert rep.pivotal_sum == pytest.approx(2.0)
    assert rep.numeric_derivative == pytest.approx(-2.0)
    assert rep.sign == -1


def test_constant_table():
    rep = R.russo_check(np.full(8, 3.0), 0.4)
    assert rep.pivotal_sum == 0 and abs(rep.numeric_derivative) < 1e-9


def test_indicator_all_plus():
    X = np.zeros(8)
    X[7] = 1
    rep = R.russo_check(X, 0.3, dp=1e-3)
    assert abs(abs(rep.pivotal_sum) - abs(rep.numeric_derivative)) <= 10 * rep.dp**2
    assert rep.exact_derivative == pytest.approx(-3 * 0.7**2)


def test_random_tables_derivative():
    rng = make_rng(1)
    for _ in range(50):
        d = int(rng.integers(1, 9))
        X = rng.normal(size=1 << d)
        p = float(rng.uniform(0.1, 0.9))
        rep = R.russo_check(X, p)
        assert rep.exact_derivative == pytest.approx(-rep.pivotal_sum, rel=1e-9, abs=1e-9)


def test_expectation_enumeration():
    X = np.arange(8.0)
    p = 0.2
    tot = 0.0
    for x in range(8):
        h = bin(x).count("1")
        tot += X[x] * p ** (3 - h) * (1 - p) ** h
    assert R.expectation(X, p) == pytest.approx(tot)


def test_russo_errors():
    with pytest.raises(InvalidParameters):
        R.russo_check([1.0, 2.0, 3.0], 0.3)
    with pytest.raises(InvalidParameters):
        R.russo_check([1.0, 2.0], 0.3, dp=0.5)
    with pytest.raises(InvalidParameters):
        R.russo_check([1.0, 2.0], 0.3, dp=0)


def test_numba_formula_matches_law():
    # the Monte Carlo kernel's clause sampler: negation rate p, distinct sorted variables
    m, lits, starts = draw_formula(make_rng(3), 10, 3, 0.3, 20000.0, 0)
    lits = lits.reshape(-1, 3)
    assert lits.shape[0] == m and starts[-1] == 3 * m
    assert abs(lits.shape[0] - 20000) < 5 * 20000**0.5
    v = np.abs(lits)
    assert (np.diff(v, axis=1) > 0).all() and v.min() >= 1 and v.max() <= 10
    assert abs((lits < 0).mean() - 0.3) < 0.01


def test_spine_chunk_matches_solver():
    # rebuild formulas from the same generator state and compare
    n, k, p, lam = 12, 3, 0.4, 4.0 * 12
    sat, plus, minus = spine_chunk(make_rng(5), n, k, p, lam, 200)
    rng = make_rng(5)
    for t in range(200):
        lits = draw_formula(rng, n, k, p, lam, 0)[1].reshape(-1, k)
        f = sample_formula(n, k, p, 0).append(*map(tuple, lits.tolist()))
        a = dpll_sat(f)
        assert bool(sat[t]) == (a is not None)
        if a is not None:
            sp = spine_set(f)
            assert (len(sp.s_plus), len(sp.s_minus)) == (plus[t], minus[t])


def test_chunked_is_split_invariant():
    a = list(chunked(spine_chunk, 9, 250, 10, 3, 0.5, 40.0, chunk=100))
    b = list(chunked(spine_chunk, 9, 250, 10, 3, 0.5, 40.0, chunk=100))
    assert [x[0].size for x in a] == [100, 100, 50]
    assert all(np.array_equal(x[1], y[1]) for x, y in zip(a, b))
    # chunks use distinct seeds
    assert not np.array_equal(a[0][1], a[1][1])


def test_pivotal_symmetric_at_half():
    est = R.pivotal_rho_estimate(15, 3, 0.5, 4.0, 20000, seed=2)
    diff = est.rho_plus - est.rho_minus
    # paired difference of two event rates
    assert abs(diff) <= 3 * np.sqrt((est.rho_plus + est.rho_minus) / est.trials)
    assert est.violations == 0 and est.verified > 0
    assert est.identity_holds
    assert est.to_dict()["schema"] == "biased-ksat/pivotal/1"


def test_pivotal_identity_exact_in_expectation():
    # the estimator of rho uses C's own sign, so the weighted mean holds up to noise
    est = R.pivotal_rho_estimate(15, 3, 0.4, 4.0, 20000, seed=3)
    assert abs(est.identity_gap) <= est.identity_ci + 1e-12
    lo, hi = est.ci["rho"]
    assert lo <= est.rho <= hi
