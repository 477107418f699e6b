"""Exhaustive oracle over the whole cube.

Assignments are enumerated as bitmasks: bit ``v-1`` set means ``x_v`` is TRUE,
so the popcount of a mask is its layer index.
"""

from dataclasses import dataclass

import numpy as np

from ..formula import Formula
from .dpll import SolverRefusal

BRUTE_LIMIT = 25


@dataclass(frozen=True)
class SolutionCounts:
    Z: np.ndarray
    M: np.ndarray

    @property
    def satisfiable(self) -> bool:
        return bool(self.Z.sum() > 0)


def clause_masks(f: Formula):
    """Per-clause (mask, pattern): an assignment x violates clause c iff x & mask == pattern."""
    masks = np.zeros(f.m, dtype=np.int64)
    pats = np.zeros(f.m, dtype=np.int64)
    for c, clause in enumerate(f.clauses):
        for lit in clause:
            bit = 1 << (abs(lit) - 1)
            masks[c] |= bit
            if lit < 0:
                pats[c] |= bit
    return masks, pats


def satisfying_table(f: Formula, limit: int = BRUTE_LIMIT) -> np.ndarray:
    """Boolean array of length 2^n: entry x is True iff mask x satisfies f."""
    if f.n > limit:
        raise SolverRefusal(f"brute force refuses n={f.n} > {limit}")
    size = 1 << f.n
    masks, pats = clause_masks(f)
    sat = np.ones(size, dtype=bool)
    chunk = 1 << 20
    for lo in range(0, size, chunk):
        x = np.arange(lo, min(size, lo + chunk), dtype=np.int64)
        s = sat[lo : lo + x.size]
        for mk, pt in zip(masks, pats):
            s &= (x & mk) != pt
    return sat


def masks_to_assignments(xs, n) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.int64)
    bits = (xs[:, None] >> np.arange(n)) & 1
    return (2 * bits - 1).astype(np.int8)


def solutions(f: Formula, limit: int = BRUTE_LIMIT) -> np.ndarray:
    """All satisfying assignments as rows over {-1, +1}."""
    return masks_to_assignments(np.flatnonzero(satisfying_table(f, limit)), f.n)


def brute_force_sat(f: Formula, limit: int = BRUTE_LIMIT) -> SolutionCounts:
    sat = satisfying_table(f, limit)
    x = np.arange(sat.size, dtype=np.int64)
    layer = np.bitwise_count(x).astype(np.int64)
    minimal = sat.copy()
    for v in range(f.n):
        bit = 1 << v
        has = (x & bit) != 0
        minimal &= ~(has & sat[x ^ bit])
    Z = np.bincount(layer[sat], minlength=f.n + 1)
    M = np.bincount(layer[minimal], minlength=f.n + 1)
    return SolutionCounts(Z, M)


def brute_spine(f: Formula, limit: int = BRUTE_LIMIT):
    """(S+, S-) by intersecting all solutions; None when unsatisfiable."""
    sols = solutions(f, limit)
    if len(sols) == 0:
        return None
    plus = {v + 1 for v in range(f.n) if (sols[:, v] == 1).all()}
    minus = {v + 1 for v in range(f.n) if (sols[:, v] == -1).all()}
    return plus, minus
