"""Experiment orchestration: satisfiability curves, threshold bisection,
spine statistics and parabola-shape ratios.

Trial ``j`` of any experiment uses the formula seed ``derive_seed(base_seed, j)``
at every density.  Sampling is prefix-consistent (discrete mode) or uses an
inverse-CDF Poisson count (poisson mode), so for a fixed trial the formula
only gains clauses as the density grows and sat-frequency is monotone in the
density trial by trial.
"""

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import bounds
from ._stats import Z99, crossing, decreasing_fit, ratio_ci, wilson
from .formula import BiasParams, InvalidParameters, sample_formula_lits
from .mc import chunked, spine_chunk
from .rng import derive_seed
from .solvers.dpll import DEFAULT_LIMIT, SAT, dpll_kernel
from .solvers.twosat import two_sat_kernel
from .solvers.ucp import ucp_kernel

SOLVERS = ("dpll", "two_sat", "ucp")


@dataclass
class ExperimentConfig:
    k: int
    p: float
    n: int
    trials: int = 100
    solver: str = "dpll"
    mode: str = "discrete"
    base_seed: int = 0
    out: Optional[str] = None
    tol: float = 0.02
    bracket: Optional[tuple] = None
    t: float = 4.0  # clause density for spine experiments

    def __post_init__(self):
        BiasParams(self.p)
        if self.solver not in SOLVERS:
            raise InvalidParameters(f"unknown solver {self.solver!r}")
        if self.solver == "two_sat" and self.k != 2:
            raise InvalidParameters("solver two_sat requires k=2")
        if self.solver == "dpll" and self.n > DEFAULT_LIMIT:
            raise InvalidParameters(f"dpll is limited to n <= {DEFAULT_LIMIT}")
        if self.tol <= 0:
            raise InvalidParameters("tolerance must be positive")
        if self.trials < 1:
            raise InvalidParameters("need at least one trial")

    @property
    def b(self) -> float:
        return 0.5 - self.p

    def to_dict(self):
        return asdict(self)


def trial_sat(cfg: ExperimentConfig, density: float, j: int) -> bool:
    """Whether trial ``j``'s formula at clause density ``density`` is solved."""
    seed = derive_seed(cfg.base_seed, j)
    m = density * cfg.n if cfg.mode == "poisson" else int(round(density * cfg.n))
    lits = sample_formula_lits(cfg.n, cfg.k, cfg.p, m, cfg.mode, seed)
    flat = lits.ravel()
    starts = np.arange(0, flat.size + 1, cfg.k, dtype=np.int64)
    if cfg.solver == "two_sat":
        return bool(two_sat_kernel(cfg.n, flat, starts)[0])
    if cfg.solver == "dpll":
        return dpll_kernel(cfg.n, flat, starts, 0)[0] == SAT
    u = np.random.default_rng(derive_seed(cfg.base_seed, j, 1)).random(2 * cfg.n + 2)
    return ucp_kernel(cfg.n, cfg.k, flat, starts, cfg.p, u)[0] < 0


def sat_count(cfg: ExperimentConfig, density: float) -> int:
    if density <= 0:
        return cfg.trials
    return sum(trial_sat(cfg, density, j) for j in range(cfg.trials))


@dataclass
class CurveRow:
    density: float
    sat: int
    trials: int
    freq: float
    lo: float
    hi: float
    fitted: float = float("nan")


def _rows(cfg, densities, counts, z=Z99):
    order = np.argsort(densities, kind="stable")
    d = np.asarray(densities, float)[order]
    c = np.asarray(counts)[order]
    lo, hi = wilson(c, cfg.trials, z)
    fit = decreasing_fit(c / cfg.trials)
    return [
        CurveRow(float(d[i]), int(c[i]), cfg.trials, float(c[i] / cfg.trials), float(lo[i]), float(hi[i]), float(fit[i]))
        for i in range(d.size)
    ]


def sat_curve(cfg: ExperimentConfig, grid) -> list:
    """Empirical Pr(sat) with Wilson intervals and a non-increasing fit."""
    grid = [float(x) for x in grid]
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise InvalidParameters("density grid must be sorted")
    return _rows(cfg, grid, [sat_count(cfg, d) for d in grid])


@dataclass
class ThresholdEstimate:
    alpha_hat: float
    ci: float
    table: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    @property
    def bracket(self) -> tuple:
        return (self.alpha_hat - self.ci, self.alpha_hat + self.ci)

    def to_dict(self):
        out = {
            "schema": "biased-ksat/threshold/1",
            "config": self.config,
            "bracket": list(self.bracket),
            "table": [asdict(r) for r in self.table],
        }
        # wide finite-size windows for k >= 3: report the bracket only
        if self.config.get("k") == 2:
            out["alpha_hat"] = self.alpha_hat
            out["ci"] = self.ci
        return out


def default_bracket(k: int, p: float) -> tuple:
    p = min(p, 1 - p)
    if k == 2:
        return (0.0, 2.0 * bounds.alpha2(p))
    if k == 1:
        return (0.0, 2.0)
    return (0.0, 1.5 * bounds.c_p_maximize(k, p, check=False)[1])


def threshold_bisect(cfg: ExperimentConfig) -> ThresholdEstimate:
    """Bisection on density for the empirical Pr(sat) = 1/2 crossing."""
    lo, hi = cfg.bracket or default_bracket(cfg.k, cfg.p)
    probes = {}

    def probe(d):
        d = round(float(d), 12)
        if d not in probes:
            probes[d] = sat_count(cfg, d)
        return probes[d]

    if probe(lo) <= cfg.trials / 2:
        raise InvalidParameters(f"Pr(sat) <= 1/2 already at {lo}; widen the bracket downwards")
    if probe(hi) > cfg.trials / 2:
        raise InvalidParameters(f"Pr(sat) > 1/2 still at {hi}; widen the bracket upwards")
    while hi - lo > cfg.tol:
        mid = 0.5 * (lo + hi)
        if probe(mid) > cfg.trials / 2:
            lo = mid
        else:
            hi = mid
    mid = 0.5 * (lo + hi)
    for off in (-4, -2, 2, 4):
        d = mid + off * cfg.tol
        if d > 0:
            probe(d)
    rows = _rows(cfg, list(probes), list(probes.values()))
    x = np.array([r.density for r in rows])
    fit = np.array([r.fitted for r in rows])
    alpha = crossing(x, fit)
    # interval where the Wilson band straddles 1/2
    lo_band = decreasing_fit([r.lo for r in rows])
    hi_band = decreasing_fit([r.hi for r in rows])
    a_lo = crossing(x, lo_band)
    a_hi = crossing(x, hi_band)
    a_lo = x[0] if a_lo is None else a_lo
    a_hi = x[-1] if a_hi is None else a_hi
    ci = max(alpha - a_lo, a_hi - alpha, cfg.tol / 2)
    return ThresholdEstimate(float(alpha), float(ci), rows, cfg.to_dict())


@dataclass
class SpineExperimentReport:
    trials: int
    satisfiable: int
    locked_true: int
    locked_false: int
    fraction_true: float
    ci: float
    histogram: list
    bound: float  # 1/2 + b
    config: dict

    @property
    def meets_bound(self) -> bool:
        return self.fraction_true >= self.bound - self.ci

    def to_dict(self):
        out = asdict(self)
        out["schema"] = "biased-ksat/spine/1"
        out["meets_bound"] = self.meets_bound
        return out


def spine_experiment(cfg: ExperimentConfig, z: float = Z99) -> SpineExperimentReport:
    """Fraction of spine variables locked TRUE over satisfiable Poisson(t n) formulas.

    The fraction pools all spine variables (ratio estimator); its interval
    treats each formula as a cluster.
    """
    if cfg.n > DEFAULT_LIMIT:
        raise InvalidParameters("spine_experiment needs DPLL-scale n")
    sats, plus, minus = [], [], []
    for s, pl, mi in chunked(spine_chunk, cfg.base_seed, cfg.trials, cfg.n, cfg.k, cfg.p, float(cfg.t * cfg.n)):
        sats.append(s)
        plus.append(pl)
        minus.append(mi)
    sat = np.concatenate(sats)
    plus = np.concatenate(plus)[sat]
    minus = np.concatenate(minus)[sat]
    if sat.sum() == 0:
        raise InvalidParameters("no satisfiable samples")
    frac, ci = ratio_ci(plus, plus + minus, z)
    hist = np.bincount(plus + minus, minlength=cfg.n + 1)
    return SpineExperimentReport(
        cfg.trials, int(sat.sum()), int(plus.sum()), int(minus.sum()), frac, ci,
        hist.tolist(), 0.5 + cfg.b, cfg.to_dict(),
    )


@dataclass
class ParabolaRow:
    b: float
    alpha_lo: float
    alpha_hi: float
    alpha_hat: float
    ci: float
    ratio: float
    ratio_ci: float
    exact: Optional[float] = None


def parabola_experiment(k: int, b_grid, n: int, trials: int, base_seed: int = 0,
                        tol: float = 0.02, solver: Optional[str] = None, mode: str = "discrete") -> list:
    """alpha_hat(1/2 - b) / alpha_hat(1/2) over a grid of b (b=0 is always probed).

    All densities share trial seeds, so the estimates are positively
    correlated and the independent-error interval below is conservative.
    """
    solver = solver or ("two_sat" if k == 2 else "dpll")
    grid = sorted(set([0.0] + [float(b) for b in b_grid]))
    est = {}
    for b in grid:
        cfg = ExperimentConfig(k, 0.5 - b, n, trials, solver, mode, base_seed, tol=tol)
        est[b] = threshold_bisect(cfg)
    a0 = est[0.0]
    out = []
    for b in grid:
        e = est[b]
        r = e.alpha_hat / a0.alpha_hat
        rci = r * math.hypot(e.ci / e.alpha_hat, a0.ci / a0.alpha_hat)
        exact = 1 / (1 - 4 * b * b) if k == 2 else None
        lo, hi = e.bracket
        out.append(ParabolaRow(b, lo, hi, e.alpha_hat, e.ci, r, rci, exact))
    return out


def write_output(payload, path=None, fmt="json"):
    """Serialise a dict (json) or a list of row dicts (csv) to ``path`` or return the text."""
    if fmt == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        cols = list(rows[0].keys()) if rows else []
        lines = [",".join(cols)] + [",".join(_csv_cell(r[c]) for c in cols) for r in rows]
        text = "\n".join(lines) + "\n"
    else:
        raise InvalidParameters(f"unknown format {fmt!r}")
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def _csv_cell(v):
    if isinstance(v, (list, tuple, dict)):
        return '"' + json.dumps(v).replace('"', '""') + '"'
    return "" if v is None else str(v)
