"""Unit Clause Propagation with clause-size census.

Each step locks one variable.  If unit clauses exist, a literal is drawn
uniformly from the multiset union of the unit clauses (equivalently, a
uniform unit clause) and made TRUE.  Otherwise a uniform unlocked variable is
set TRUE with probability ``1 - p``.  The run never backtracks; it fails iff
some clause ever loses all its literals.

Free steps draw from *all* unlocked variables, including ones that no
longer occur in any open clause.  Once every clause is satisfied or empty the
remaining free steps are exactly the final random assignment of leftover
variables, so the loop simply runs for ``n`` steps.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from ..formula import Formula, _as_bias
from ..rng import make_rng
from .dpll import build_occurrences, _code


@dataclass
class UcpOutcome:
    success: bool
    assignment: np.ndarray  # +-1 values (also filled in on failure)
    first_failure: int  # step index j at which the first empty clause appeared, -1 if none
    trajectory: np.ndarray  # (n+1, kmax+1): row j is S_0..S_kmax after j locks
    satisfied: np.ndarray  # satisfied-clause count after j locks

    def census(self, j: int) -> np.ndarray:
        return self.trajectory[j]

    def to_csv(self) -> str:
        k = self.trajectory.shape[1] - 1
        head = "j," + ",".join(f"S_{i}" for i in range(k + 1))
        rows = (f"{j}," + ",".join(map(str, r)) for j, r in enumerate(self.trajectory.tolist()))
        return "\n".join([head, *rows]) + "\n"


@njit(cache=True)
def _remove(lst, pos, size, item):
    at = pos[item]
    last = lst[size - 1]
    lst[at] = last
    pos[last] = at
    pos[item] = -1
    return size - 1


@njit(cache=True)
def ucp_kernel(n, kmax, lits, starts, p, u):
    m = starts.shape[0] - 1
    ptr, idx = build_occurrences(n, lits, starts)
    size = np.empty(m, dtype=np.int64)
    done = np.zeros(m, dtype=np.bool_)
    census = np.zeros(kmax + 1, dtype=np.int64)
    units = np.empty(m, dtype=np.int64)
    unit_pos = np.full(m, -1, dtype=np.int64)
    nunits = 0
    for c in range(m):
        w = starts[c + 1] - starts[c]
        size[c] = w
        census[w] += 1
        if w == 1:
            units[nunits] = c
            unit_pos[c] = nunits
            nunits += 1
    free = np.arange(n)
    free_pos = np.arange(n)
    nfree = n
    val = np.zeros(n, dtype=np.int8)
    traj = np.zeros((n + 1, kmax + 1), dtype=np.int32)
    nsat = np.zeros(n + 1, dtype=np.int64)
    traj[0, :] = census
    satisfied = 0
    first_fail = -1
    if census[0] > 0:
        first_fail = 0

    for j in range(n):
        if nunits > 0:
            c = units[min(int(u[2 * j] * nunits), nunits - 1)]
            lit = 0
            for q in range(starts[c], starts[c + 1]):
                if val[abs(lits[q]) - 1] == 0:
                    lit = lits[q]
                    break
        else:
            v = free[min(int(u[2 * j] * nfree), nfree - 1)]
            lit = v + 1 if u[2 * j + 1] >= p else -(v + 1)
        v = abs(lit) - 1
        val[v] = 1 if lit > 0 else -1
        nfree = _remove(free, free_pos, nfree, v)

        t = _code(lit)
        for q in range(ptr[t], ptr[t + 1]):
            c = idx[q]
            if done[c]:
                continue
            done[c] = True
            satisfied += 1
            census[size[c]] -= 1
            if size[c] == 1:
                nunits = _remove(units, unit_pos, nunits, c)
        f = _code(-lit)
        for q in range(ptr[f], ptr[f + 1]):
            c = idx[q]
            if done[c]:
                continue
            s = size[c]
            census[s] -= 1
            census[s - 1] += 1
            size[c] = s - 1
            if s == 1:
                nunits = _remove(units, unit_pos, nunits, c)
                if first_fail < 0:
                    first_fail = j + 1
            elif s == 2:
                units[nunits] = c
                unit_pos[c] = nunits
                nunits += 1
        traj[j + 1, :] = census
        nsat[j + 1] = satisfied
    return first_fail, val, traj, nsat


def _kmax(f: Formula) -> int:
    return max(f.k, max((len(c) for c in f.clauses), default=0))


def ucp_run(f: Formula, bias=None, rng=0) -> UcpOutcome:
    """Run UCP on ``f``; ``bias`` defaults to the formula's own."""
    bias = f.bias if bias is None else _as_bias(bias)
    u = make_rng(rng).random(2 * f.n + 2)
    lits, starts = f.flat
    first_fail, val, traj, nsat = ucp_kernel(f.n, _kmax(f), lits, starts, bias.p, u)
    return UcpOutcome(first_fail < 0, val.astype(np.int64), int(first_fail), traj, nsat)


def ucp_arrays(n, kmax, lits, starts, p, rng):
    """Same as ``ucp_run`` on raw clause arrays (skips building a Formula)."""
    u = make_rng(rng).random(2 * n + 2)
    return ucp_kernel(n, kmax, lits, starts, p, u)
