"""Cascades, shadows and the sign-weight minimisation over odd monotone g."""

from fractions import Fraction

from biased_ksat import kk

for N, r in [(7, 2), (10, 3), (100, 3), (1000, 4)]:
    c = kk.cascade_decompose(N, r)
    print(f"N={N:5d} r={r}: cascade {c.a}, textbook {c.textbook()}, bound {kk.shadow_bound(c)}")

print("(1,4,6,4) valid:", kk.fvector_valid([1, 4, 6, 4]), " (1,2,5) valid:", kk.fvector_valid([1, 2, 5]))

b = Fraction(1, 10)
for d in range(1, 5):
    w, g = kk.min_w_brute(d, b)
    print(f"d={d}: min w = {w} (= 2b: {w == 2 * b}), dictator w = {kk.w_of_g(kk.SignFunctionTable.dictator(d), b)}")

# S(i, a) is not monotone in a: row i=0 grows towards a = d-1
d = 6
print("S(0, a) for d=6:", [float(kk.s_term(0, a, d, b)) for a in range(d)])
print("normalised w of the single cube a:", [round(float(kk.w_of_cascade((a,), d, b)), 4) for a in range(d)])
