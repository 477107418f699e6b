"""Linear-time 2-SAT via strongly connected components of the implication graph.

Node ``2(v-1)`` is ``x_v`` and ``2(v-1)+1`` is ``not x_v``.  Tarjan's algorithm
numbers components in reverse topological order, so a literal is set TRUE
iff its component number is smaller than its negation's.
"""

import numpy as np
from numba import njit

from ..formula import Formula, InvalidParameters
from .dpll import _code


@njit(cache=True)
def implication_graph(n, lits, starts):
    m = starts.shape[0] - 1
    src = np.empty(2 * m, dtype=np.int64)
    dst = np.empty(2 * m, dtype=np.int64)
    e = 0
    for c in range(m):
        w = starts[c + 1] - starts[c]
        a = lits[starts[c]]
        b = lits[starts[c] + 1] if w == 2 else a
        # (a or b): not a -> b, not b -> a
        src[e] = _code(-a)
        dst[e] = _code(b)
        e += 1
        if w == 2:
            src[e] = _code(-b)
            dst[e] = _code(a)
            e += 1
    N = 2 * n
    ptr = np.zeros(N + 1, dtype=np.int64)
    for i in range(e):
        ptr[src[i] + 1] += 1
    for i in range(N):
        ptr[i + 1] += ptr[i]
    fill = ptr[:-1].copy()
    adj = np.empty(e, dtype=np.int64)
    for i in range(e):
        adj[fill[src[i]]] = dst[i]
        fill[src[i]] += 1
    return ptr, adj


@njit(cache=True)
def tarjan(N, ptr, adj):
    index = np.full(N, -1, dtype=np.int64)
    low = np.zeros(N, dtype=np.int64)
    comp = np.full(N, -1, dtype=np.int64)
    on_stack = np.zeros(N, dtype=np.bool_)
    stack = np.empty(N, dtype=np.int64)
    sp = 0
    call = np.empty(N, dtype=np.int64)
    edge = np.empty(N, dtype=np.int64)
    counter = 0
    ncomp = 0
    for root in range(N):
        if index[root] >= 0:
            continue
        depth = 0
        call[0] = root
        edge[0] = ptr[root]
        index[root] = counter
        low[root] = counter
        counter += 1
        stack[sp] = root
        sp += 1
        on_stack[root] = True
        while depth >= 0:
            v = call[depth]
            if edge[depth] < ptr[v + 1]:
                w = adj[edge[depth]]
                edge[depth] += 1
                if index[w] < 0:
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    on_stack[w] = True
                    depth += 1
                    call[depth] = w
                    edge[depth] = ptr[w]
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                if low[v] == index[v]:
                    while True:
                        sp -= 1
                        w = stack[sp]
                        on_stack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                depth -= 1
                if depth >= 0:
                    u = call[depth]
                    if low[v] < low[u]:
                        low[u] = low[v]
    return comp


@njit(cache=True)
def two_sat_kernel(n, lits, starts):
    ptr, adj = implication_graph(n, lits, starts)
    comp = tarjan(2 * n, ptr, adj)
    val = np.empty(n, dtype=np.int8)
    for v in range(n):
        a = comp[2 * v]
        b = comp[2 * v + 1]
        if a == b:
            return False, val
        val[v] = 1 if a < b else -1
    return True, val


def two_sat_arrays(n, lits, starts):
    return two_sat_kernel(int(n), np.asarray(lits, dtype=np.int64), np.asarray(starts, dtype=np.int64))


def two_sat_solve(f: Formula):
    """Satisfying +-1 assignment, or ``None`` if unsatisfiable.  Needs width <= 2."""
    if f.k != 2 or any(len(c) > 2 for c in f.clauses):
        raise InvalidParameters("two_sat_solve needs a 2-CNF (k=2)")
    if any(len(c) == 0 for c in f.clauses):
        return None
    lits, starts = f.flat
    ok, val = two_sat_arrays(f.n, lits, starts)
    return val.astype(np.int64) if ok else None
