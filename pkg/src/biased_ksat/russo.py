"""Russo's formula on the finite cube and Monte Carlo pivotal probabilities.

Throughout, coordinate signs are i.i.d. with Pr(s_i = -1) = p.  With the
pivotal delta^i X = X(s with s_i=+1) - X(s with s_i=-1), raising p moves mass
towards -1, so

    d/dp E_p[X] = - sum_i E_p[delta^i X].

``russo_check`` measures both sides independently and reports the sign.
"""

from dataclasses import asdict, dataclass

import numpy as np

from ._stats import Z99, mean_ci, ratio_ci, wilson
from .formula import InvalidParameters, _as_bias
from .mc import CHUNK, pivotal_chunk
from .rng import derive_seed, make_rng


def _table(X):
    X = np.asarray(X, dtype=float)
    d = int(np.log2(X.size))
    if X.ndim != 1 or X.size != 1 << d:
        raise InvalidParameters("value table must have length 2^d")
    if d > 16:
        raise InvalidParameters("russo_check handles d <= 16")
    return X, d


def _plus_counts(d):
    return np.bitwise_count(np.arange(1 << d)).astype(np.int64)


def expectation(X, p: float) -> float:
    X, d = _table(X)
    h = _plus_counts(d)
    return float((X * p ** (d - h) * (1 - p) ** h).sum())


def exact_derivative(X, p: float) -> float:
    """d/dp E_p[X] by differentiating each monomial p^(d-h) (1-p)^h."""
    X, d = _table(X)
    h = _plus_counts(d)
    with np.errstate(divide="ignore", invalid="ignore"):
        dw = np.where(d - h > 0, (d - h) * p ** np.maximum(d - h - 1, 0), 0.0) * (1 - p) ** h
        dw -= np.where(h > 0, h * (1 - p) ** np.maximum(h - 1, 0), 0.0) * p ** (d - h)
    return float((X * dw).sum())


def pivotal_sum(X, p: float) -> float:
    X, d = _table(X)
    idx = np.arange(1 << d)
    h = _plus_counts(d)
    w = p ** (d - h) * (1 - p) ** h
    total = 0.0
    for i in range(d):
        bit = 1 << i
        total += (w * (X[idx | bit] - X[idx & ~bit])).sum()
    return float(total)


@dataclass
class RussoReport:
    d: int
    p: float
    dp: float
    expectation: float
    numeric_derivative: float
    exact_derivative: float
    pivotal_sum: float
    ratio: float  # numeric derivative / pivotal sum (nan when both vanish)
    sign: int  # sign relating dE/dp to the pivotal sum, 0 if undetermined

    def to_dict(self):
        return asdict(self)


def russo_check(X, p: float, dp: float = 1e-4) -> RussoReport:
    X, d = _table(X)
    if not 0 < p < 1:
        raise InvalidParameters("need 0 < p < 1")
    if not dp > 0 or p - dp <= 0 or p + dp >= 1:
        raise InvalidParameters(f"degenerate step dp={dp} at p={p}")
    num = (expectation(X, p + dp) - expectation(X, p - dp)) / (2 * dp)
    piv = pivotal_sum(X, p)
    ratio = num / piv if piv != 0 else float("nan")
    sign = int(np.sign(round(ratio))) if np.isfinite(ratio) else 0
    return RussoReport(d, p, dp, expectation(X, p), num, exact_derivative(X, p), piv, ratio, sign)


@dataclass
class PivotalEstimates:
    n: int
    k: int
    p: float
    b: float
    t: float
    trials: int
    seed: int
    rho: float
    rho_plus: float
    rho_minus: float
    ci: dict  # Wilson intervals keyed by estimate
    identity_gap: float  # rho - ((1/2+b) rho_plus + (1/2-b) rho_minus)
    identity_ci: float
    ratio: float  # (rho_plus - rho_minus) / rho
    ratio_ci: float
    phi_sat: float
    verified: int
    violations: int
    z: float = Z99

    @property
    def identity_holds(self) -> bool:
        return abs(self.identity_gap) <= self.identity_ci

    def to_dict(self):
        out = asdict(self)
        out["schema"] = "biased-ksat/pivotal/1"
        return out


def pivotal_rho_estimate(n: int, k: int, bias, t: float, trials: int, seed: int = 0,
                         verify: int = 1000, z: float = Z99) -> PivotalEstimates:
    """Monte Carlo for rho = Pr(Phi sat, Phi & C unsat) and its sign-conditioned parts.

    Phi has Poisson(t n) clauses.  Both forced-sign variants of the fresh
    clause C are evaluated on the same (Phi, C) pair; the unforced event
    uses C's own sign.  Up to ``verify`` events are re-checked: every
    literal of C must be falsified by all solutions of Phi.
    """
    bias = _as_bias(bias)
    ev_parts, signs, sats = [], [], []
    verified = violations = 0
    for ev, sign, phi_sat, ver, vio in _run(seed, trials, n, k, bias.p, t, verify):
        ev_parts.append(ev)
        signs.append(sign)
        sats.append(phi_sat)
        verified += ver
        violations += vio
    ev = np.concatenate(ev_parts)
    sign = np.concatenate(signs)
    phi_sat = np.concatenate(sats)
    e_plus = ev[:, 0].astype(float)
    e_minus = ev[:, 1].astype(float)
    e = np.where(sign > 0, e_plus, e_minus)
    T = e.size
    u, v = 0.5 - bias.b, 0.5 + bias.b
    gap, gap_ci = mean_ci(e - (v * e_plus + u * e_minus), z)
    ratio, r_ci = ratio_ci(e_plus - e_minus, e, z)
    cis = {}
    for name, arr in (("rho", e), ("rho_plus", e_plus), ("rho_minus", e_minus)):
        lo, hi = wilson(arr.sum(), T, z)
        cis[name] = [float(lo), float(hi)]
    return PivotalEstimates(
        n, k, bias.p, bias.b, t, T, seed, float(e.mean()), float(e_plus.mean()), float(e_minus.mean()),
        cis, gap, gap_ci, ratio, r_ci, float(phi_sat.mean()), verified, violations, z,
    )


def _run(seed, trials, n, k, p, t, verify):
    # like mc.chunked, but the verification budget carries over between chunks
    left = verify
    done = 0
    index = 0
    while done < trials:
        size = min(CHUNK, trials - done)
        out = pivotal_chunk(make_rng(derive_seed(seed, index)), n, k, p, float(t * n), size, left)
        left -= out[3]
        yield out
        done += size
        index += 1
