"""Kruskal-Katona cascades, f-vectors, and the spine-sign weight w(g).

Cascade indexing: the r-cascade of N is the non-increasing sequence
a_0 >= a_1 >= ... >= a_j with N = sum_i C(a_i - i, r - i); the textbook
form uses n_{r-i} = a_i - i.  The bound on the next face count is
N^(r) = sum_i C(a_i - i, r - i + 1).

f-vectors are indexed by the number of vertices of a face, so f[0] = 1
counts the empty face, f[1] the vertices, f[2] the edges, and so on.

Sign functions live on {-1, +1}^d stored as arrays of length 2^d indexed by
the bitmask of +1 coordinates.  A point with h coordinates +1 has weight
W = (1/2 + b)^h (1/2 - b)^(d - h).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .formula import InvalidParameters


@dataclass(frozen=True)
class Cascade:
    r: int
    a: tuple

    @property
    def N(self) -> int:
        return sum(comb(ai - i, self.r - i) for i, ai in enumerate(self.a))

    def textbook(self) -> tuple:
        """(n_r, n_{r-1}, ...) with N = sum C(n_s, s)."""
        return tuple(ai - i for i, ai in enumerate(self.a))

    @classmethod
    def from_textbook(cls, r, ns):
        return cls(r, tuple(n + i for i, n in enumerate(ns)))


def cascade_decompose(N: int, r: int) -> Cascade:
    """Greedy maximal-binomial decomposition of N at rank r."""
    if N < 1 or r < 1:
        raise InvalidParameters("need N >= 1 and r >= 1")
    a = []
    rem = N
    i = 0
    while rem > 0:
        s = r - i
        # largest x with C(x, s) <= rem
        x = s
        while comb(x + 1, s) <= rem:
            x += 1
        a.append(x + i)
        rem -= comb(x, s)
        i += 1
    return Cascade(r, tuple(a))


def shadow_bound(c: Cascade) -> int:
    """Largest number of (r+1)-faces whose r-subfaces are among N given r-faces."""
    return sum(comb(ai - i, c.r - i + 1) for i, ai in enumerate(c.a))


def kk_bound(N: int, r: int) -> int:
    return 0 if N == 0 else shadow_bound(cascade_decompose(N, r))


def fvector_valid(f) -> bool:
    """Whether some simplicial complex has face counts f (f[0] = empty face)."""
    f = [int(x) for x in f]
    if any(x < 0 for x in f):
        return False
    if not f or all(x == 0 for x in f):
        return True
    if f[0] != 1:
        return False
    for r in range(1, len(f) - 1):
        if f[r + 1] > kk_bound(f[r], r):
            return False
    return True


# --- explicit colex families (used as an independent oracle) -------------

def colex_first(N: int, r: int) -> list:
    """First N r-subsets of {0, 1, ...} in colex order."""
    out = []
    top = r
    while len(out) < N:
        out = sorted(
            (frozenset(s) for s in combinations(range(top), r)),
            key=lambda s: sorted(s, reverse=True),
        )[:N]
        top += 1
        if comb(top - 1, r) >= N:
            break
    return out[:N]


def upper_count(family, r: int) -> int:
    """Number of (r+1)-sets all of whose r-subsets lie in ``family``."""
    fam = set(family)
    ground = sorted(set().union(*fam)) if fam else []
    return sum(
        all(frozenset(t) - {v} in fam for v in t)
        for t in combinations(ground, r + 1)
    )


def colex_complex_valid(f) -> bool:
    """Build colex-initial families for every rank and test downward closure."""
    f = [int(x) for x in f]
    if all(x == 0 for x in f):
        return True
    if f[0] != 1:
        return False
    fams = [set(colex_first(f[r], r)) for r in range(len(f))]
    for r in range(1, len(f)):
        for face in fams[r]:
            if any(face - {v} not in fams[r - 1] for v in face):
                return False
    return True


@lru_cache(maxsize=None)
def realizable_fvectors(nverts: int) -> frozenset:
    """All f-vectors of complexes on at most ``nverts`` labelled vertices (exhaustive)."""
    subsets = sorted(range(1 << nverts), key=lambda s: (bin(s).count("1"), s))
    found = set()

    def rec(pos, chosen):
        if pos == len(subsets):
            counts = [0] * (nverts + 1)
            for s in chosen:
                counts[bin(s).count("1")] += 1
            while len(counts) > 1 and counts[-1] == 0:
                counts.pop()
            found.add(tuple(counts))
            return
        s = subsets[pos]
        rec(pos + 1, chosen)
        if all((s & ~(1 << v)) in chosen for v in range(nverts) if s >> v & 1):
            chosen.add(s)
            rec(pos + 1, chosen)
            chosen.discard(s)

    rec(0, set())
    found.discard((0,))
    return frozenset(found)


# --- sign functions -------------------------------------------------------

def _num(b):
    return b if isinstance(b, Fraction) else float(b)


def point_weights(d: int, b):
    b = _num(b)
    half = Fraction(1, 2) if isinstance(b, Fraction) else 0.5
    u, v = half - b, half + b
    return [v ** bin(x).count("1") * u ** (d - bin(x).count("1")) for x in range(1 << d)]


@dataclass(frozen=True)
class SignFunctionTable:
    d: int
    g: tuple  # values in {-1, 0, +1}, index = bitmask of +1 coordinates

    def __post_init__(self):
        g = tuple(int(x) for x in self.g)
        object.__setattr__(self, "g", g)
        if len(g) != 1 << self.d or any(x not in (-1, 0, 1) for x in g):
            raise InvalidParameters("table must have 2^d entries in {-1, 0, 1}")

    @property
    def full(self) -> int:
        return (1 << self.d) - 1

    def is_odd(self) -> bool:
        return all(self.g[x] == -self.g[self.full ^ x] for x in range(1 << self.d))

    def is_monotone(self) -> bool:
        return all(
            self.g[x] <= self.g[x | (1 << i)] for x in range(1 << self.d) for i in range(self.d)
        )

    def mirrored(self) -> "SignFunctionTable":
        return SignFunctionTable(self.d, tuple(-x for x in self.g))

    @classmethod
    def from_upset(cls, d, upset):
        full = (1 << d) - 1
        g = [0] * (1 << d)
        for x in upset:
            g[x] = 1
            g[full ^ x] = -1
        return cls(d, tuple(g))

    @classmethod
    def dictator(cls, d, i=0):
        return cls(d, tuple(1 if x >> i & 1 else -1 for x in range(1 << d)))

    @classmethod
    def majority(cls, d):
        return cls(d, tuple(int(np.sign(2 * bin(x).count("1") - d)) for x in range(1 << d)))


def w_of_g(g: SignFunctionTable, b, check: bool = True):
    """E[g(s)] / Pr(g(s) != 0) for a b-biased point s.

    Equivalently: sum over g = 1 of W(s) - W(-s), over the sum of W(s) + W(-s).
    """
    if check and not (g.is_odd() and g.is_monotone()):
        raise InvalidParameters("g must be odd and monotone")
    W = point_weights(g.d, b)
    num = den = 0
    for x, gx in enumerate(g.g):
        if gx == 1:
            num += W[x] - W[g.full ^ x]
            den += W[x] + W[g.full ^ x]
    if den == 0:
        raise InvalidParameters("g is identically zero")
    return num / den


@lru_cache(maxsize=None)
def _upsets(d: int) -> tuple:
    """All up-sets of the Boolean lattice on d coordinates, as frozensets of masks."""
    full = (1 << d) - 1
    order = sorted(range(1 << d), key=lambda s: -bin(s).count("1"))
    out = []

    def rec(pos, chosen):
        if pos == len(order):
            out.append(frozenset(chosen))
            return
        s = order[pos]
        rec(pos + 1, chosen)
        if all((s | (1 << v)) in chosen for v in range(d) if not s >> v & 1):
            chosen.add(s)
            rec(pos + 1, chosen)
            chosen.discard(s)

    rec(0, set())
    assert all(full in u for u in out if u)
    return tuple(out)


def odd_monotone_tables(d: int):
    """Every odd monotone g that is not identically zero."""
    full = (1 << d) - 1
    for up in _upsets(d):
        if up and all((full ^ x) not in up for x in up):
            yield SignFunctionTable.from_upset(d, up)


def min_w_brute(d: int, b):
    """(min w(g), an argmin) over all odd monotone g on d coordinates, d <= 4."""
    if d > 4:
        raise InvalidParameters("min_w_brute enumerates only d <= 4")
    best, arg = None, None
    for g in odd_monotone_tables(d):
        w = w_of_g(g, b, check=False)
        if best is None or w < best:
            best, arg = w, g
    return best, arg


def s_term(i: int, a_i: int, d: int, b):
    """W-weight difference of the subcube with i coordinates -1 and d - a_i coordinates +1."""
    b = _num(b)
    half = Fraction(1, 2) if isinstance(b, Fraction) else 0.5
    u, v = half - b, half + b
    return u**i * v ** (d - a_i) - v**i * u ** (d - a_i)


def s_monotonicity(d: int, b) -> dict:
    """Pairs on the grid 0 <= i <= a <= d where S fails to strictly decrease.

    Keys ``"i"`` and ``"a"`` hold ((i, a), (i', a')) pairs of neighbours along
    that argument with S(i', a') >= S(i, a).  Since (1/2+b) + (1/2-b) = 1,
    ties such as S(i, a) = S(i+1, a) at d - a = 1 are unavoidable, and along
    a fixed row S grows with a while d - a > i.
    """
    out = {"i": [], "a": []}
    for a in range(d + 1):
        for i in range(a + 1):
            here = s_term(i, a, d, b)
            if i + 1 <= a and s_term(i + 1, a, d, b) >= here:
                out["i"].append(((i, a), (i + 1, a)))
            if a + 1 <= d and s_term(i, a + 1, d, b) >= here:
                out["a"].append(((i, a), (i, a + 1)))
    return out


def _check_cascade(a, d):
    a = tuple(int(x) for x in a)
    if not a or any(x < y for x, y in zip(a, a[1:])) or a[0] > d - 1 or any(ai - i < 0 for i, ai in enumerate(a)):
        raise InvalidParameters(f"invalid cascade {a} for d={d}")
    return a


def cascade_numerator(a, d: int, b):
    """sum_i S(i, a_i): the unnormalised weight of the complex f(a)."""
    a = _check_cascade(a, d)
    return sum(s_term(i, ai, d, b) for i, ai in enumerate(a))


def cascade_mass(a, d: int, b):
    """Total probability of the set {g != 0} for the complex f(a)."""
    a = _check_cascade(a, d)
    b = _num(b)
    half = Fraction(1, 2) if isinstance(b, Fraction) else 0.5
    u, v = half - b, half + b
    return sum(u**i * v ** (d - ai) + v**i * u ** (d - ai) for i, ai in enumerate(a))


def w_of_cascade(a, d: int, b):
    """w of the complex with face counts f_r(a) = sum_i C(a_i - i, r - i)."""
    return cascade_numerator(a, d, b) / cascade_mass(a, d, b)


def f_of_cascade(a, d: int) -> list:
    """f_r(a) for r = 0..d (r = number of -1 coordinates of a point)."""
    return [sum(comb(ai - i, r - i) if r >= i else 0 for i, ai in enumerate(a)) for r in range(d + 1)]


def table_of_cascade(a, d: int) -> SignFunctionTable:
    """A sign function whose {g = 1} realises f(a): colex-initial families of
    -1 coordinate sets, one per rank."""
    f = f_of_cascade(a, d)
    full = (1 << d) - 1
    up = set()
    for r, fr in enumerate(f):
        if fr > comb(d, r):
            raise InvalidParameters(f"f_{r}={fr} exceeds C({d},{r})")
        for face in colex_first(fr, r):
            neg = sum(1 << v for v in face)
            up.add(full ^ neg)
    if any((full ^ x) in up for x in up):
        raise InvalidParameters(f"cascade {tuple(a)} gives a complex meeting its mirror image")
    return SignFunctionTable.from_upset(d, up)


def cascade_admissible(a, d: int) -> bool:
    """Whether f(a) is realised by some odd monotone g on d coordinates."""
    try:
        return table_of_cascade(a, d).is_monotone()
    except InvalidParameters:
        return False
