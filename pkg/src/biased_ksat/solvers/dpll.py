"""Complete DPLL solver (unit propagation, pure literals, most-frequent branching).

The search runs in a numba kernel over flat clause arrays so the Monte Carlo
experiments can afford ~10^6 small calls.  Branching is deterministic: the
variable with the most occurrences in not-yet-satisfied clauses, TRUE first.
"""

import numpy as np
from numba import njit

from ..formula import Formula, InvalidParameters

DEFAULT_LIMIT = 60
SAT, UNSAT, ABORTED = 1, 0, -1


class SolverRefusal(InvalidParameters):
    pass


@njit(cache=True)
def _code(lit):
    # literal -> dense index: x_v -> 2(v-1), not x_v -> 2(v-1)+1
    return 2 * (abs(lit) - 1) + (1 if lit < 0 else 0)


@njit(cache=True)
def build_occurrences(n, lits, starts):
    m = starts.shape[0] - 1
    counts = np.zeros(2 * n + 1, dtype=np.int64)
    for c in range(m):
        for j in range(starts[c], starts[c + 1]):
            counts[_code(lits[j]) + 1] += 1
    ptr = np.cumsum(counts)
    fill = ptr[:-1].copy()
    idx = np.empty(ptr[-1], dtype=np.int64)
    for c in range(m):
        for j in range(starts[c], starts[c + 1]):
            code = _code(lits[j])
            idx[fill[code]] = c
            fill[code] += 1
    return ptr, idx


@njit(cache=True)
def _lit_value(val, lit):
    v = val[abs(lit) - 1]
    return v if lit > 0 else -v


@njit(cache=True)
def _propagate(val, trail, tsize, qhead, lits, starts, ptr, idx):
    """Propagate from trail[qhead:]; returns (tsize, ok)."""
    while qhead < tsize:
        lit = trail[qhead]
        qhead += 1
        neg = _code(-lit)
        for q in range(ptr[neg], ptr[neg + 1]):
            c = idx[q]
            free = 0
            last = 0
            sat = False
            for j in range(starts[c], starts[c + 1]):
                lv = _lit_value(val, lits[j])
                if lv == 1:
                    sat = True
                    break
                if lv == 0:
                    free += 1
                    last = lits[j]
            if sat:
                continue
            if free == 0:
                return tsize, False
            if free == 1:
                val[abs(last) - 1] = 1 if last > 0 else -1
                trail[tsize] = last
                tsize += 1
    return tsize, True


@njit(cache=True)
def dpll_kernel(n, lits, starts, max_decisions):
    """Return (status, values) with status 1 sat / 0 unsat / -1 aborted."""
    m = starts.shape[0] - 1
    ptr, idx = build_occurrences(n, lits, starts)
    val = np.zeros(n, dtype=np.int8)
    trail = np.zeros(n + 1, dtype=np.int64)
    tsize = 0
    # decision stack: trail position of each decision, and whether flipped
    dec_pos = np.zeros(n + 1, dtype=np.int64)
    dec_flipped = np.zeros(n + 1, dtype=np.bool_)
    level = 0
    decisions = 0
    pos_cnt = np.zeros(n, dtype=np.int64)
    neg_cnt = np.zeros(n, dtype=np.int64)

    for c in range(m):
        w = starts[c + 1] - starts[c]
        if w == 0:
            return UNSAT, val
        if w == 1:
            lit = lits[starts[c]]
            cur = _lit_value(val, lit)
            if cur == -1:
                return UNSAT, val
            if cur == 0:
                val[abs(lit) - 1] = 1 if lit > 0 else -1
                trail[tsize] = lit
                tsize += 1
    tsize, ok = _propagate(val, trail, tsize, 0, lits, starts, ptr, idx)
    if not ok:
        return UNSAT, val

    while True:
        if ok:
            # pure literals and branching statistics over unsatisfied clauses
            pos_cnt[:] = 0
            neg_cnt[:] = 0
            open_clauses = 0
            for c in range(m):
                sat = False
                for j in range(starts[c], starts[c + 1]):
                    if _lit_value(val, lits[j]) == 1:
                        sat = True
                        break
                if sat:
                    continue
                open_clauses += 1
                for j in range(starts[c], starts[c + 1]):
                    lit = lits[j]
                    if val[abs(lit) - 1] == 0:
                        if lit > 0:
                            pos_cnt[lit - 1] += 1
                        else:
                            neg_cnt[-lit - 1] += 1
            if open_clauses == 0:
                return SAT, val
            pure = False
            best = -1
            best_score = -1
            for v in range(n):
                if val[v] != 0:
                    continue
                pc = pos_cnt[v]
                nc = neg_cnt[v]
                if pc + nc == 0:
                    continue
                if pc == 0 or nc == 0:
                    lit = v + 1 if nc == 0 else -(v + 1)
                    val[v] = 1 if lit > 0 else -1
                    trail[tsize] = lit
                    tsize += 1
                    pure = True
                elif pc + nc > best_score:
                    best_score = pc + nc
                    best = v
            if pure:
                continue
            decisions += 1
            if max_decisions > 0 and decisions > max_decisions:
                return ABORTED, val
            dec_pos[level] = tsize
            dec_flipped[level] = False
            level += 1
            val[best] = 1
            trail[tsize] = best + 1
            tsize += 1
            tsize, ok = _propagate(val, trail, tsize, tsize - 1, lits, starts, ptr, idx)
        else:
            while level > 0 and dec_flipped[level - 1]:
                level -= 1
            if level == 0:
                return UNSAT, val
            start = dec_pos[level - 1]
            lit = trail[start]
            for q in range(start, tsize):
                val[abs(trail[q]) - 1] = 0
            tsize = start
            dec_flipped[level - 1] = True
            val[abs(lit) - 1] = -1 if lit > 0 else 1
            trail[tsize] = -lit
            tsize += 1
            tsize, ok = _propagate(val, trail, tsize, tsize - 1, lits, starts, ptr, idx)


def solve_arrays(n, lits, starts, max_decisions=0):
    """Kernel entry on raw arrays; unassigned variables are reported TRUE."""
    status, val = dpll_kernel(
        int(n), np.asarray(lits, dtype=np.int64), np.asarray(starts, dtype=np.int64), int(max_decisions)
    )
    out = val.astype(np.int64)
    out[out == 0] = 1
    return int(status), out


def dpll_sat(f: Formula, limit: int = DEFAULT_LIMIT, max_decisions: int = 0):
    """Satisfying assignment as a +-1 array, or ``None`` when unsatisfiable."""
    if f.n > limit:
        raise SolverRefusal(f"dpll_sat refuses n={f.n} > limit {limit}")
    lits, starts = f.flat
    status, values = solve_arrays(f.n, lits, starts, max_decisions)
    if status == ABORTED:
        raise RuntimeError("decision budget exhausted")
    return values if status == SAT else None


def is_sat(f: Formula, limit: int = DEFAULT_LIMIT) -> bool:
    return dpll_sat(f, limit) is not None
