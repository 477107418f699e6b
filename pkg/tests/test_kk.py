import itertools
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from biased_ksat import kk
from biased_ksat.formula import InvalidParameters


def test_cascade_examples():
    assert kk.cascade_decompose(10, 3).a == (5,)
    assert kk.shadow_bound(kk.cascade_decompose(10, 3)) == 5
    c = kk.cascade_decompose(7, 2)
    assert c.a == (4, 2) and kk.shadow_bound(c) == 4
    for a in range(3, 12):
        assert kk.cascade_decompose(comb(a, 3), 3).a == (a,)
    with pytest.raises(InvalidParameters):
        kk.cascade_decompose(0, 2)


def test_textbook_conversion():
    c = kk.cascade_decompose(7, 2)
    assert c.textbook() == (4, 1)
    assert kk.Cascade.from_textbook(2, (4, 1)) == c


def test_cascade_reconstruction_small():
    for r in range(1, 7):
        for N in range(1, 600):
            c = kk.cascade_decompose(N, r)
            assert c.N == N
            assert all(x >= y for x, y in zip(c.a, c.a[1:]))
            assert all(x > y for x, y in zip(c.textbook(), c.textbook()[1:]))


def brute_max_upper(N, r, ground):
    """Max number of (r+1)-sets covered by N r-sets, by search over families."""
    best = 0
    rs = list(itertools.combinations(range(ground), r))
    for fam in itertools.combinations(rs, N):
        best = max(best, kk.upper_count([frozenset(s) for s in fam], r))
    return best


@pytest.mark.parametrize("N,r", [(1, 2), (3, 2), (4, 2), (6, 2), (7, 2), (4, 3), (5, 3)])
def test_shadow_bound_exhaustive(N, r):
    # ground set of r+2 vertices suffices for these N
    ground = r + 3 if comb(r + 2, r) < N else r + 2
    assert kk.shadow_bound(kk.cascade_decompose(N, r)) == brute_max_upper(N, r, ground)


def test_colex_family_attains_bound():
    for r in (1, 2, 3):
        for N in range(1, 31):
            fam = kk.colex_first(N, r)
            assert len(set(fam)) == N
            assert kk.upper_count(fam, r) == kk.kk_bound(N, r)


def test_fvector_examples():
    for d in range(1, 5):
        assert kk.fvector_valid([comb(d + 1, r) for r in range(d + 2)])
    assert not kk.fvector_valid([1, 2, 5])
    assert kk.fvector_valid([1, 3, 3])
    assert not kk.fvector_valid([0, 3])


def test_fvector_against_enumeration():
    real = kk.realizable_fvectors(4)
    assert len(real) == 25
    for f in itertools.product([1], range(5), range(7), range(5), range(2)):
        f = list(f)
        while len(f) > 1 and f[-1] == 0:
            f.pop()
        assert kk.fvector_valid(f) == (tuple(f) in real), f
        assert kk.colex_complex_valid(f) == kk.fvector_valid(f)


# --- sign functions ------------------------------------------------------------

def test_w_d1():
    g = kk.SignFunctionTable.dictator(1)
    assert kk.w_of_g(g, Fraction(1, 10)) == Fraction(1, 5)
    assert kk.w_of_g(g, 0.0) == 0


def test_w_b_zero_vanishes():
    for d in (1, 2, 3):
        for g in kk.odd_monotone_tables(d):
            assert kk.w_of_g(g, Fraction(0)) == 0


def test_w_majority_d3():
    b = Fraction(1, 7)
    v, u = Fraction(1, 2) + b, Fraction(1, 2) - b
    expect = v**3 + 3 * v**2 * u - (u**3 + 3 * u**2 * v)
    assert kk.w_of_g(kk.SignFunctionTable.majority(3), b) == expect


def test_w_oddness():
    b = Fraction(1, 9)
    for g in kk.odd_monotone_tables(3):
        assert kk.w_of_g(g.mirrored(), b, check=False) == -kk.w_of_g(g, b)
        assert kk.w_of_g(g, -b) == -kk.w_of_g(g, b)


def test_w_rejects_bad_tables():
    with pytest.raises(InvalidParameters):
        kk.w_of_g(kk.SignFunctionTable(1, (1, 1)), 0.1)
    with pytest.raises(InvalidParameters):
        kk.w_of_g(kk.SignFunctionTable(1, (0, 0)), 0.1)
    with pytest.raises(InvalidParameters):
        kk.SignFunctionTable(1, (2, 0))


def test_upset_counts():
    # Dedekind numbers
    assert [len(kk._upsets(d)) for d in range(5)] == [2, 3, 6, 20, 168]


def test_min_w_examples():
    assert kk.min_w_brute(2, 0.1)[0] == pytest.approx(0.2)
    assert kk.min_w_brute(3, 0.05)[0] == pytest.approx(0.1)
    assert kk.min_w_brute(3, 0.0)[0] == 0
    with pytest.raises(InvalidParameters):
        kk.min_w_brute(5, 0.1)


def test_min_w_exact_and_dictator_argmin():
    for d in range(1, 5):
        for b in (Fraction(1, 10), Fraction(1, 20)):
            val, _ = kk.min_w_brute(d, b)
            assert val == 2 * b
            assert kk.w_of_g(kk.SignFunctionTable.dictator(d), b) == 2 * b
            assert kk.w_of_g(kk.table_of_cascade((d - 1,), d), b) == 2 * b


# --- cascades of complexes -------------------------------------------------------

def test_s_term_examples():
    b = Fraction(1, 10)
    for d in range(1, 7):
        assert kk.w_of_cascade((d - 1,), d, b) == 2 * b
        assert kk.s_term(0, d, d, b) == 0


def test_s_antisymmetry():
    b = Fraction(1, 10)
    for d in range(1, 8):
        for a in range(d + 1):
            for i in range(a + 1):
                assert kk.s_term(i, a, d, b) == -kk.s_term(d - a, d - i, d, b)


def test_s_monotonicity_counterexamples():
    # S is not strictly decreasing in either argument
    b = Fraction(1, 10)
    viol = kk.s_monotonicity(6, b)
    assert ((2, 5), (3, 5)) in viol["i"]  # tie: uv(u - v) = uv(u - v)(u + v)
    assert ((0, 3), (0, 4)) in viol["a"]  # row 0 grows with a
    assert kk.s_term(2, 5, 6, b) == kk.s_term(3, 5, 6, b)
    assert kk.s_term(0, 3, 6, b) < kk.s_term(0, 4, 6, b)
    assert kk.s_monotonicity(6, Fraction(0)) == {
        "i": [((i, a), (i + 1, a)) for a in range(7) for i in range(a)],
        "a": [((i, a), (i, a + 1)) for a in range(6) for i in range(a + 1)],
    }


def test_s_decreasing_in_i_while_positive():
    # away from the sign change the i-direction does decrease
    b = Fraction(1, 10)
    for d in range(2, 8):
        for a in range(d):
            vals = [kk.s_term(i, a, d, b) for i in range(a + 1)]
            pos = [v for v in vals if v > 0]
            assert all(x > y for x, y in zip(pos, pos[1:]))


def test_normalized_w_decreasing_in_single_a():
    b = Fraction(1, 10)
    for d in range(2, 8):
        ws = [kk.w_of_cascade((a,), d, b) for a in range(d)]
        assert all(x > y for x, y in zip(ws, ws[1:]))


def admissible_cascades(d):
    for length in range(1, d + 1):
        for a in itertools.combinations_with_replacement(range(d - 1, -1, -1), length):
            if all(ai - i >= 0 for i, ai in enumerate(a)) and kk.cascade_admissible(a, d):
                yield a


def test_cascade_w_matches_table_and_dictator_minimal():
    seen = 0
    for d in range(1, 7):
        for b in (Fraction(1, 20), Fraction(1, 10)):
            base = kk.w_of_cascade((d - 1,), d, b)
            for a in admissible_cascades(d):
                g = kk.table_of_cascade(a, d)
                assert g.is_odd() and g.is_monotone()
                assert kk.w_of_g(g, b) == kk.w_of_cascade(a, d, b)
                assert base <= kk.w_of_cascade(a, d, b)
                seen += 1
    assert seen > 100


def test_constant_cascades():
    for d in range(1, 7):
        for b in (0.05, 0.1):
            for a in range(d):
                for length in range(1, a + 2):
                    seq = (a,) * length
                    if kk.cascade_admissible(seq, d):
                        assert kk.w_of_cascade((d - 1,), d, b) <= kk.w_of_cascade(seq, d, b) + 1e-15


def test_complex_size_bound():
    rng = np.random.default_rng(3)
    for _ in range(200):
        d = int(rng.integers(2, 10))
        length = int(rng.integers(1, d + 1))
        a = sorted(rng.integers(0, d, length).tolist(), reverse=True)
        if any(ai - i < 0 for i, ai in enumerate(a)):
            continue
        assert sum(kk.f_of_cascade(a, d)) < 2 ** (a[0] + 1)


def test_invalid_cascade():
    with pytest.raises(InvalidParameters):
        kk.w_of_cascade((2, 3), 5, 0.1)
    with pytest.raises(InvalidParameters):
        kk.w_of_cascade((5,), 5, 0.1)
