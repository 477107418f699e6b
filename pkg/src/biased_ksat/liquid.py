"""Scaling limit of the UCP clause-size census.

c_i(t) is the limit of S_i(tn)/n for 2 <= i <= k.  Starting from c_k(0) = c it
solves

    dc_i/dt = 2p(1-p) (i+1)/(1-t) c_{i+1} - i/(1-t) c_i,   c_{k+1} = 0,

whose solution is a binomial thinning: c C(k,i) (2p(1-p) t)^(k-i) (1-t)^i.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .formula import InvalidParameters, sample_formula_lits
from .rng import derive_seed
from .solvers.ucp import ucp_kernel

SINGULARITY_EPS = 0.05


def _p(bias):
    return float(getattr(bias, "p", bias))


def closed_form(i: int, t, c: float, k: int, bias):
    if not 2 <= i <= k:
        raise InvalidParameters(f"need 2 <= i <= k, got i={i}, k={k}")
    t = np.asarray(t, dtype=float)
    if np.any((t < 0) | (t >= 1)):
        raise InvalidParameters("need 0 <= t < 1")
    s = 2 * _p(bias) * (1 - _p(bias))
    out = c * comb(k, i) * (s * t) ** (k - i) * (1 - t) ** i
    return float(out) if out.ndim == 0 else out


def closed_form_vector(t, c, k, bias) -> np.ndarray:
    """(c_2(t), ..., c_k(t))."""
    return np.array([closed_form(i, t, c, k, bias) for i in range(2, k + 1)])


def rhs(t, y, k, bias):
    s = 2 * _p(bias) * (1 - _p(bias))
    i = np.arange(2, k + 1)
    up = np.append(y[1:], 0.0)
    return (s * (i + 1) * up - i * y) / (1 - t)


@dataclass
class OdeTrajectory:
    t: np.ndarray
    c: np.ndarray  # shape (len(t), k-1): columns c_2..c_k
    k: int

    def max_error(self, c0, bias) -> float:
        exact = np.stack([closed_form_vector(ti, c0, self.k, bias) for ti in self.t])
        return float(np.abs(self.c - exact).max())


def integrate(k: int, bias, c: float, t_end: float = 0.9, step: float = 1e-3, eps: float = SINGULARITY_EPS):
    """Classical fixed-step RK4 from t=0 to t_end."""
    if t_end > 1 - eps:
        raise InvalidParameters(f"t_end={t_end} too close to the singularity at t=1 (eps={eps})")
    if step <= 0 or k < 2:
        raise InvalidParameters("need step > 0 and k >= 2")
    nsteps = int(round(t_end / step))
    h = t_end / nsteps
    y = np.zeros(k - 1)
    y[-1] = c
    ts = np.linspace(0.0, t_end, nsteps + 1)
    out = np.empty((nsteps + 1, k - 1))
    out[0] = y
    for j in range(nsteps):
        t = ts[j]
        k1 = rhs(t, y, k, bias)
        k2 = rhs(t + h / 2, y + h / 2 * k1, k, bias)
        k3 = rhs(t + h / 2, y + h / 2 * k2, k, bias)
        k4 = rhs(t + h, y + h * k3, k, bias)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out[j + 1] = y
    return OdeTrajectory(ts, out, k)


@dataclass
class EmpiricalTrajectory:
    t: np.ndarray  # grid times
    runs: np.ndarray  # (runs, len(t), k+1): S_i(floor(t n))/n for each run
    satisfied: np.ndarray  # (runs, len(t)) satisfied/n
    closed: np.ndarray  # (len(t), k+1): closed form for i >= 2, nan below
    m: int
    n: int

    @property
    def mean(self) -> np.ndarray:
        return self.runs.mean(axis=0)

    def sup_error(self, levels=None) -> float:
        k = self.closed.shape[1] - 1
        levels = range(2, k + 1) if levels is None else levels
        diff = np.abs(self.mean[:, list(levels)] - self.closed[:, list(levels)])
        return float(diff.max())

    def conservation_ok(self) -> bool:
        total = self.runs.sum(axis=2) + self.satisfied
        return bool(np.allclose(total * self.n, self.m))

    def rows(self):
        """(t, i, empirical, closed_form) tuples."""
        mean = self.mean
        k = self.closed.shape[1] - 1
        for a, t in enumerate(self.t):
            for i in range(2, k + 1):
                yield float(t), i, float(mean[a, i]), float(self.closed[a, i])


def empirical_trajectory(n: int, k: int, bias, c: float, runs: int, seed: int = 0, grid=None):
    """Average UCP census over ``runs`` independent formulas with m = round(c n)."""
    grid = np.linspace(0, 0.9, 10) if grid is None else np.asarray(grid, dtype=float)
    p = _p(bias)
    m = int(round(c * n))
    idx = np.floor(grid * n + 1e-9).astype(int)
    out = np.empty((runs, grid.size, k + 1))
    sat = np.empty((runs, grid.size))
    starts = np.arange(0, m * k + 1, k, dtype=np.int64)
    for r in range(runs):
        s = derive_seed(seed, r)
        lits = sample_formula_lits(n, k, p, m, "discrete", s).ravel()
        u = np.random.default_rng(derive_seed(seed, r, 1)).random(2 * n + 2)
        _, _, traj, nsat = ucp_kernel(n, k, lits, starts, p, u)
        out[r] = traj[idx] / n
        sat[r] = nsat[idx] / n
    closed = np.full((grid.size, k + 1), np.nan)
    for i in range(2, k + 1):
        closed[:, i] = closed_form(i, grid, c, k, p)
    return EmpiricalTrajectory(grid, out, sat, closed, m, n)
