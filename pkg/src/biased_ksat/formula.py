"""Biased random k-SAT formulas.

Literals are stored DIMACS-style as signed integers: ``+j`` is ``x_j`` and
``-j`` is ``not x_j`` (variables are 1-based).  A clause is a tuple of such
literals sorted by variable.  Assignments are length-``n`` arrays over
``{-1, +1}`` with ``-1`` meaning FALSE.

Bias convention: each literal of a random clause is *negated* with
probability ``p`` and positive with probability ``1 - p``.  With
``p = 1/2 - b`` the positive sign therefore has probability ``1/2 + b``, and
satisfying assignments lean towards TRUE as ``b`` grows.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np
from scipy import stats

from .rng import U64_MASK, make_rng

STAR = 0
MODES = ("discrete", "poisson")


class InvalidParameters(ValueError):
    pass


class MalformedWord(ValueError):
    pass


@dataclass(frozen=True)
class BiasParams:
    """Probability ``p`` that a literal occurrence is negated; ``b = 1/2 - p``."""

    p: float

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise InvalidParameters(f"bias p must lie in (0, 1), got {self.p!r}")

    @property
    def b(self) -> float:
        return 0.5 - self.p

    @classmethod
    def from_b(cls, b: float) -> "BiasParams":
        return cls(0.5 - b)

    def canonical(self) -> "BiasParams":
        """Map ``p > 1/2`` to the mirror model ``1 - p``."""
        return self if self.p <= 0.5 else BiasParams(1.0 - self.p)


class Literal(NamedTuple):
    var: int
    sign: int

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        return cls(abs(lit), 1 if lit > 0 else -1)

    def to_int(self) -> int:
        return self.var * self.sign


def _as_bias(bias) -> BiasParams:
    return bias if isinstance(bias, BiasParams) else BiasParams(float(bias))


def canonical_clause(lits: Sequence[int], n: int) -> tuple:
    clause = tuple(sorted((int(l) for l in lits), key=abs))
    seen = set()
    for lit in clause:
        v = abs(lit)
        if lit == 0 or v > n:
            raise InvalidParameters(f"literal {lit} out of range for n={n}")
        if v in seen:
            raise InvalidParameters(f"variable {v} repeated in clause {clause}")
        seen.add(v)
    return clause


@dataclass(frozen=True)
class Formula:
    """Immutable CNF over ``n`` variables with nominal clause width ``k``.

    Generated formulas have every clause of width ``k``; hand-built ones may
    mix widths (the solvers are width-agnostic).
    """

    n: int
    k: int
    bias: BiasParams
    clauses: tuple = ()
    seed: int = 0
    mode: str = "discrete"
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise InvalidParameters("n and k must be non-negative")
        if self.mode not in MODES:
            raise InvalidParameters(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "bias", _as_bias(self.bias))
        object.__setattr__(self, "seed", int(self.seed) & U64_MASK)
        if not self._checked:
            object.__setattr__(
                self, "clauses", tuple(canonical_clause(c, self.n) for c in self.clauses)
            )

    @property
    def m(self) -> int:
        return len(self.clauses)

    @cached_property
    def flat(self):
        """``(lits, starts)`` CSR arrays: clause ``c`` is ``lits[starts[c]:starts[c+1]]``."""
        widths = np.fromiter((len(c) for c in self.clauses), dtype=np.int64, count=self.m)
        starts = np.zeros(self.m + 1, dtype=np.int64)
        np.cumsum(widths, out=starts[1:])
        lits = np.fromiter(
            (l for c in self.clauses for l in c), dtype=np.int64, count=int(starts[-1])
        )
        return lits, starts

    def append(self, *clauses) -> "Formula":
        return Formula(self.n, self.k, self.bias, self.clauses + tuple(clauses), self.seed, self.mode)

    @classmethod
    def from_array(cls, n, k, bias, lits, seed=0, mode="discrete") -> "Formula":
        """Build from an ``(m, k)`` array of canonical signed literals (no re-validation)."""
        clauses = tuple(map(tuple, np.asarray(lits).tolist()))
        return cls(n, k, bias, clauses, seed, mode, _checked=True)


def _check_nk(n, k):
    if k < 1 or k > n:
        raise InvalidParameters(f"need 1 <= k <= n, got n={n}, k={k}")


def sample_literals(n, k, p, m, var_rng, sign_rng=None) -> np.ndarray:
    """``(m, k)`` array of i.i.d. p-biased clauses, rows sorted by variable.

    Variable sets are uniform k-subsets (sequential draws without
    replacement).  Draws are row-major, so the first ``m'`` rows agree for any
    ``m >= m'`` given the same generators: densities are coupled.
    """
    _check_nk(n, k)
    sign_rng = var_rng if sign_rng is None else sign_rng
    raw = var_rng.integers(0, n - np.arange(k), size=(m, k))
    chosen = np.empty((m, k), dtype=np.int64)
    for j in range(k):
        r = raw[:, j].astype(np.int64)
        prev = np.sort(chosen[:, :j], axis=1)
        for col in range(j):
            r += r >= prev[:, col]
        chosen[:, j] = r
    chosen.sort(axis=1)
    chosen += 1
    negated = sign_rng.random((m, k)) < p
    return np.where(negated, -chosen, chosen)


def _negation_prob(bias) -> float:
    # raw floats may sit on the closed interval; degenerate signs are fine here
    if isinstance(bias, BiasParams):
        return bias.p
    p = float(bias)
    if not 0.0 <= p <= 1.0:
        raise InvalidParameters(f"bias p must lie in [0, 1], got {p!r}")
    return p


def sample_clause(n: int, k: int, bias, rng) -> tuple:
    row = sample_literals(n, k, _negation_prob(bias), 1, make_rng(rng))[0]
    return tuple(int(l) for l in row)


def poisson_count(mean: float, u: float) -> int:
    """Inverse-CDF Poisson draw: monotone in ``mean`` for a fixed uniform ``u``."""
    if mean <= 0:
        return 0
    return max(0, int(stats.poisson.ppf(u, mean)))


def formula_streams(seed: int):
    """Independent (variables, signs, count) generators for one formula seed."""
    children = np.random.SeedSequence(int(seed) & U64_MASK).spawn(3)
    return [np.random.Generator(np.random.PCG64(c)) for c in children]


def sample_formula_lits(n, k, p, m, mode, seed) -> np.ndarray:
    var_rng, sign_rng, count_rng = formula_streams(seed)
    if mode == "poisson":
        count = poisson_count(m, count_rng.random())
    elif mode == "discrete":
        count = int(m)
    else:
        raise InvalidParameters(f"unknown mode {mode!r}")
    return sample_literals(n, k, p, count, var_rng, sign_rng)


def sample_formula(n: int, k: int, bias, m, mode: str = "discrete", seed: int = 0) -> Formula:
    """``m`` i.i.d. clauses (discrete) or ``Poisson(m)`` of them (poisson)."""
    bias = _as_bias(bias)
    if m < 0:
        raise InvalidParameters("m must be non-negative")
    lits = sample_formula_lits(n, k, bias.p, m, mode, seed)
    return Formula.from_array(n, k, bias, lits, seed=seed, mode=mode)


def clause_to_subcube(clause: Sequence[int], n: int) -> np.ndarray:
    """Word over {-1, +1, STAR} of the assignments the clause forbids."""
    word = np.zeros(n, dtype=np.int8)
    for lit in canonical_clause(clause, n):
        word[abs(lit) - 1] = -1 if lit > 0 else 1
    return word


def subcube_to_clause(word) -> tuple:
    w = np.asarray(
        [STAR if (x is None or x == "*") else x for x in word], dtype=np.int64
    )
    if not np.isin(w, (-1, 0, 1)).all():
        raise MalformedWord("subcube entries must be -1, +1 or STAR")
    fixed = np.flatnonzero(w)
    if fixed.size == 0:
        raise MalformedWord("word has no fixed coordinate")
    return tuple(int(j + 1) if w[j] == -1 else -int(j + 1) for j in fixed)


def in_subcube(word, assignment) -> bool:
    w = np.asarray(word)
    a = np.asarray(assignment)
    fixed = w != STAR
    return bool(np.all(a[fixed] == w[fixed]))


def evaluate(f: Formula, assignment) -> list:
    """Indices of clauses violated by ``assignment`` (empty list: satisfied)."""
    a = np.asarray(assignment)
    if a.shape != (f.n,):
        raise InvalidParameters(f"assignment length {a.shape} does not match n={f.n}")
    lits, starts = f.flat
    if f.m == 0:
        return []
    true_lit = a[np.abs(lits) - 1] * np.sign(lits) > 0
    widths = np.diff(starts)
    sat = np.zeros(f.m, dtype=bool)
    nonempty = widths > 0
    if true_lit.size:
        sat[nonempty] = np.logical_or.reduceat(true_lit, starts[:-1][nonempty])
    return np.flatnonzero(~sat).tolist()


def is_satisfied(f: Formula, assignment) -> bool:
    return not evaluate(f, assignment)
