"""Spine (backbone) variables of a satisfiable formula."""

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from ..formula import Formula
from .dpll import DEFAULT_LIMIT, SAT, SolverRefusal, dpll_kernel


class UnsatisfiableInput(ValueError):
    pass


@dataclass(frozen=True)
class SpineReport:
    s_plus: frozenset = field(default_factory=frozenset)
    s_minus: frozenset = field(default_factory=frozenset)

    @property
    def size(self) -> int:
        return len(self.s_plus) + len(self.s_minus)


@njit(cache=True)
def _full(val):
    out = val.astype(np.int8)
    for v in range(out.shape[0]):
        if out[v] == 0:
            out[v] = 1
    return out


@njit(cache=True)
def spine_kernel(n, lits, starts):
    """(sat, locked): locked[v] is +1/-1 for spine variables, 0 otherwise.

    Each candidate costs one DPLL call with the opposite unit literal added;
    every model found on the way rules out all variables it flips.
    """
    locked = np.zeros(n, dtype=np.int8)
    status, val = dpll_kernel(n, lits, starts, 0)
    if status != SAT:
        return False, locked
    witness = _full(val)
    L = lits.shape[0]
    ext = np.empty(L + 1, dtype=np.int64)
    ext[:L] = lits
    est = np.empty(starts.shape[0] + 1, dtype=np.int64)
    est[:-1] = starts
    est[-1] = L + 1
    candidate = np.ones(n, dtype=np.bool_)
    for v in range(n):
        if not candidate[v]:
            continue
        s = witness[v]
        ext[L] = -s * (v + 1)
        st, model = dpll_kernel(n, ext, est, 0)
        if st == SAT:
            model = _full(model)
            for u in range(n):
                if model[u] != witness[u]:
                    candidate[u] = False
        else:
            locked[v] = s
    return True, locked


def spine_arrays(n, lits, starts):
    """(plus, minus) variable sets of the CNF given by flat arrays, or None if unsat."""
    ok, locked = spine_kernel(int(n), np.asarray(lits, dtype=np.int64), np.asarray(starts, dtype=np.int64))
    if not ok:
        return None
    return set((np.flatnonzero(locked == 1) + 1).tolist()), set((np.flatnonzero(locked == -1) + 1).tolist())


def spine_set(f: Formula, limit: int = DEFAULT_LIMIT) -> SpineReport:
    if f.n > limit:
        raise SolverRefusal(f"spine_set refuses n={f.n} > limit {limit}")
    lits, starts = f.flat
    res = spine_arrays(f.n, lits, starts)
    if res is None:
        raise UnsatisfiableInput("spine sets are only defined here for satisfiable formulas")
    return SpineReport(frozenset(res[0]), frozenset(res[1]))
