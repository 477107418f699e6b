"""Literal-degree statistics and exhaustive hypergraph sparsity checks."""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..formula import Formula
from .dpll import SolverRefusal

SPARSITY_LIMIT = 22


@dataclass(frozen=True)
class DegreeStats:
    d_plus: np.ndarray
    d_minus: np.ndarray

    @property
    def D1(self) -> int:
        return int(self.d_plus.sum() + self.d_minus.sum())

    @property
    def D2(self) -> int:
        return int((self.d_plus * self.d_minus).sum())

    @property
    def ratio(self) -> float:
        """2*D2/D1 (0 for the empty formula)."""
        return 2.0 * self.D2 / self.D1 if self.D1 else 0.0


def degree_stats(f: Formula) -> DegreeStats:
    lits, _ = f.flat
    pos = lits[lits > 0]
    neg = -lits[lits < 0]
    return DegreeStats(
        np.bincount(pos - 1, minlength=f.n).astype(np.int64),
        np.bincount(neg - 1, minlength=f.n).astype(np.int64),
    )


def sparsity_check(edges, x: float, y: float, n: int = None):
    """None if every vertex set of size s <= x*n spans at most y*s edges,
    else a violating vertex set.

    Vertices are 1-based; ``edges`` is a list of vertex collections (a
    multiset: repeated edges count separately).  ``n`` defaults to the largest
    vertex seen.
    """
    edges = [tuple(sorted(e)) for e in edges]
    if n is None:
        n = max((max(e) for e in edges if e), default=0)
    if n > SPARSITY_LIMIT:
        raise SolverRefusal(f"sparsity_check refuses n={n} > {SPARSITY_LIMIT}")
    if not edges:
        return None
    smax = int(np.floor(x * n + 1e-12))
    if smax <= 0:
        return None
    emask = np.array([sum(1 << (v - 1) for v in e) for e in edges], dtype=np.int64)
    # subset masks in chunks; an edge lies in S iff emask & ~S == 0
    size = 1 << n
    chunk = 1 << 16
    for lo in range(0, size, chunk):
        S = np.arange(lo, min(size, lo + chunk), dtype=np.int64)
        s = np.bitwise_count(S).astype(np.int64)
        keep = (s >= 1) & (s <= smax)
        S, s = S[keep], s[keep]
        if S.size == 0:
            continue
        inside = ((emask[None, :] & ~S[:, None]) == 0).sum(axis=1)
        bad = np.flatnonzero(inside > y * s)
        if bad.size:
            mask = int(S[bad[0]])
            return {v + 1 for v in range(n) if mask >> v & 1}
    return None


def sparsity_check_small(edges, x, y, n):
    """Plain combinations-based reference implementation (tests only)."""
    edges = [frozenset(e) for e in edges]
    for s in range(1, int(np.floor(x * n + 1e-12)) + 1):
        for S in combinations(range(1, n + 1), s):
            Sset = set(S)
            if sum(e <= Sset for e in edges) > y * s:
                return Sset
    return None
