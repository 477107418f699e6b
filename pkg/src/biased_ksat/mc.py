"""Compiled Monte Carlo loops for the spine and pivotal experiments.

These run ~10^5-10^6 tiny instances, so sampling and solving both happen
inside numba.  Each chunk of trials owns one ``numpy.random.Generator``
seeded from ``derive_seed(base_seed, chunk_index)``; results are therefore
reproducible and independent of how chunks are scheduled.
"""

import numpy as np
from numba import njit

from .rng import derive_seed, make_rng
from .solvers.dpll import SAT, dpll_kernel
from .solvers.spine import _full, spine_kernel

CHUNK = 10_000


@njit(cache=True)
def draw_clause(rng, n, k, p, out, offset):
    """Uniform k-subset of variables, sorted, each literal negated w.p. p."""
    for j in range(k):
        r = rng.integers(0, n - j)
        # shift past already chosen values (kept sorted in out[offset:offset+j])
        for q in range(j):
            if r >= out[offset + q]:
                r += 1
        pos = offset + j
        while pos > offset and out[pos - 1] > r:
            out[pos] = out[pos - 1]
            pos -= 1
        out[pos] = r
    for j in range(k):
        v = out[offset + j] + 1
        out[offset + j] = -v if rng.random() < p else v


@njit(cache=True)
def draw_formula(rng, n, k, p, lam, extra):
    """Poisson(lam) clauses plus room for ``extra`` trailing clauses."""
    m = rng.poisson(lam)
    lits = np.empty((m + extra) * k, dtype=np.int64)
    for c in range(m):
        draw_clause(rng, n, k, p, lits, c * k)
    starts = np.arange(0, (m + extra) * k + 1, k).astype(np.int64)
    return m, lits, starts


@njit(cache=True)
def _satisfies(sigma, lits, lo, hi):
    for j in range(lo, hi):
        l = lits[j]
        if (l > 0 and sigma[l - 1] == 1) or (l < 0 and sigma[-l - 1] == -1):
            return True
    return False


@njit(cache=True)
def _locked_against(n, lits, m, k, lit):
    """True iff Phi (first m clauses) forces the opposite of ``lit``."""
    ext = np.empty(m * k + 1, dtype=np.int64)
    ext[: m * k] = lits[: m * k]
    ext[m * k] = lit
    st = np.empty(m + 2, dtype=np.int64)
    for c in range(m + 1):
        st[c] = c * k
    st[m + 1] = m * k + 1
    status, _ = dpll_kernel(n, ext, st, 0)
    return status != SAT


@njit(cache=True)
def pivotal_chunk(rng, n, k, p, lam, trials, verify_budget):
    """Per trial: Phi ~ Poisson(lam) clauses and a fresh clause C.

    ev[t, 0] / ev[t, 1]: Phi is satisfiable but Phi & C is not, with C's
    first (lowest-index) literal forced positive / negative.  sign[t] is
    the sign C's first literal would have had under the biased law, so the
    unforced event is ev[t, 0] if sign[t] > 0 else ev[t, 1].
    """
    ev = np.zeros((trials, 2), dtype=np.bool_)
    sign = np.zeros(trials, dtype=np.int8)
    phi_sat = np.zeros(trials, dtype=np.bool_)
    verified = 0
    violations = 0
    for t in range(trials):
        m, lits, starts = draw_formula(rng, n, k, p, lam, 1)
        draw_clause(rng, n, k, p, lits, m * k)
        sign[t] = 1 if lits[m * k] > 0 else -1
        status, val = dpll_kernel(n, lits[: m * k], starts[: m + 1], 0)
        if status != SAT:
            continue
        phi_sat[t] = True
        sigma = _full(val)
        v0 = abs(lits[m * k])
        for s in range(2):
            lits[m * k] = v0 if s == 0 else -v0
            if _satisfies(sigma, lits, m * k, m * k + k):
                continue
            st2, _ = dpll_kernel(n, lits, starts, 0)
            if st2 != SAT:
                ev[t, s] = True
                if verified < verify_budget:
                    verified += 1
                    for j in range(k):
                        # every literal of C must be locked to FALSE by Phi
                        if not _locked_against(n, lits, m, k, lits[m * k + j]):
                            violations += 1
                            break
    return ev, sign, phi_sat, verified, violations


@njit(cache=True)
def spine_chunk(rng, n, k, p, lam, trials):
    """Per trial: satisfiable flag and the numbers of variables locked TRUE/FALSE."""
    sat = np.zeros(trials, dtype=np.bool_)
    plus = np.zeros(trials, dtype=np.int64)
    minus = np.zeros(trials, dtype=np.int64)
    for t in range(trials):
        m, lits, starts = draw_formula(rng, n, k, p, lam, 0)
        ok, locked = spine_kernel(n, lits, starts)
        if ok:
            sat[t] = True
            for v in range(n):
                if locked[v] == 1:
                    plus[t] += 1
                elif locked[v] == -1:
                    minus[t] += 1
    return sat, plus, minus


def chunked(kernel, base_seed, trials, *args, chunk=CHUNK):
    """Run ``kernel(rng, *args, size)`` over seeded chunks; yields each result."""
    done = 0
    index = 0
    while done < trials:
        size = min(chunk, trials - done)
        rng = make_rng(derive_seed(base_seed, index))
        yield kernel(rng, *args, size)
        done += size
        index += 1
        index += 1
