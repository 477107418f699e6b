"""Closed-form and exact calculators for first/second moment bounds.

Layer convention: a vertex of the cube lies in layer ``i`` when exactly ``i``
of its coordinates are TRUE.  A random clause forbids a fixed vertex with
probability ``q_exact(i, ...)``; asymptotically this is ``eta(x)**k`` where
``x = 1 - i/n`` is the fraction of FALSE coordinates.  The rate functions
``c_px`` and ``f(x) = H(x) eta(x)^-k`` are parametrised by that FALSE fraction.

Natural logarithms throughout.
"""

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np
from scipy.special import gammaln, logsumexp

from .formula import BiasParams, InvalidParameters


class DomainError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


def _p(bias):
    if isinstance(bias, BiasParams):
        return bias.p
    if isinstance(bias, Fraction):
        return bias
    return float(bias)


def entropy(x):
    """Binary entropy in nats; H(0) = H(1) = 0."""
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)):
        raise DomainError("entropy needs 0 <= x <= 1")
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -x * np.log(x) - (1 - x) * np.log1p(-x)
    h = np.where((x == 0) | (x == 1), 0.0, h)
    return float(h) if h.ndim == 0 else h


def entropy_prime(x):
    return np.log1p(-x) - np.log(x)


def eta(bias, x):
    """eta_p(x) = x(1-p) + (1-x)p."""
    p = _p(bias)
    xa = np.asarray(x, dtype=float)
    if np.any((xa < 0) | (xa > 1)):
        raise DomainError("eta needs 0 <= x <= 1")
    if isinstance(p, Fraction) and isinstance(x, (int, Fraction)):
        return x * (1 - p) + (1 - x) * p
    out = xa * (1 - float(p)) + (1 - xa) * float(p)
    return float(out) if out.ndim == 0 else out


def log_comb(n, k):
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def _check_layer(i, n, k):
    if not (0 <= i <= n) or not (0 <= k <= n):
        raise InvalidParameters(f"need 0 <= i <= n and 0 <= k <= n, got i={i}, n={n}, k={k}")


def q_exact(i: int, n: int, k: int, bias):
    """Probability that one random clause forbids a fixed vertex of layer ``i``.

    With a ``Fraction`` bias the result is an exact ``Fraction``.
    """
    _check_layer(i, n, k)
    p = _p(bias)
    if isinstance(p, Fraction):
        total = sum(
            math.comb(i, j) * math.comb(n - i, k - j) * p**j * (1 - p) ** (k - j)
            for j in range(k + 1)
        )
        return Fraction(total) / math.comb(n, k)
    if k <= 60:
        denom = math.comb(n, k)
        return float(
            sum(
                (math.comb(i, j) * math.comb(n - i, k - j) / denom) * p**j * (1 - p) ** (k - j)
                for j in range(k + 1)
            )
        )
    j = np.arange(max(0, k - (n - i)), min(i, k) + 1)
    terms = log_comb(i, j) + log_comb(n - i, k - j) - log_comb(n, k)
    with np.errstate(divide="ignore"):
        terms = terms + j * np.log(p) + (k - j) * np.log1p(-p)
    return float(np.exp(logsumexp(terms)))


def pair_q_exact(i: int, n: int, h: int, k: int, bias):
    """Probability that one random clause forbids *both* vertices of a layer-``i``
    pair at Hamming distance ``h`` (even)."""
    if h % 2:
        raise InvalidParameters("same-layer pairs have even Hamming distance")
    if h < 0 or h > 2 * min(i, n - i):
        raise InvalidParameters(f"distance h={h} impossible in layer {i} of n={n}")
    _check_layer(i, n, k)
    if k > n - h:
        return Fraction(0) if isinstance(_p(bias), Fraction) else 0.0
    q = q_exact(i - h // 2, n - h, k, bias)
    if isinstance(q, Fraction):
        return Fraction(math.comb(n - h, k), math.comb(n, k)) * q
    return math.comb(n - h, k) / math.comb(n, k) * q


def c_px(x: float, n: int, k: int, bias, mode: str = "asym", time: str = "poisson") -> float:
    """Clause density at which the expected number of solutions with a
    FALSE-fraction ``x`` drops to one.

    ``asym`` is H(x) eta(x)^-k.  ``exact`` uses exact binomials at size ``n``
    (layer ``i = n - round(x n)``); with ``time="poisson"`` the survival
    probability of a vertex after ``m`` clauses is exp(-Q m), with
    ``time="discrete"`` it is (1-Q)^m.
    """
    if x <= 0 or x >= 1:
        return 0.0
    if mode == "asym":
        return float(entropy(x) * eta(bias, x) ** (-k))
    if mode != "exact":
        raise InvalidParameters(f"unknown mode {mode!r}")
    j = int(round(x * n))
    q = float(q_exact(n - j, n, k, bias))
    lc = float(log_comb(n, j))
    if time == "poisson":
        return lc / (n * q)
    if time == "discrete":
        return -lc / (n * math.log1p(-q))
    raise InvalidParameters(f"unknown time {time!r}")


def f_rate(x, k, bias):
    """The first-moment rate H(x) eta(x)^-k maximised by ``c_p_maximize``."""
    return entropy(x) * eta(bias, x) ** (-k)


def x_bounds(k: int, bias):
    p = float(_p(bias))
    if k < 3 or not 0 < p <= 0.5:
        raise InvalidParameters("x_bounds needs k >= 3 and 0 < p <= 1/2")
    x_plus = 0.5 if p == 0.5 else min(0.5, p / ((k - 1) * (1 - 2 * p)))
    return 0.4 * x_plus, x_plus


def delta_sign(x, k: int, bias):
    """eta(x) H'(x) - k H(x) (1-2p): same sign as the derivative of H eta^-k."""
    p = float(_p(bias))
    return eta(p, x) * entropy_prime(x) - k * entropy(x) * (1 - 2 * p)


def c_p_maximize(k: int, bias, tol: float = 1e-10, max_iter: int = 500, check: bool = True):
    """(x0, c_p): ternary search for the maximiser of H(x) eta(x)^-k on (0, 1)."""
    if tol <= 0:
        raise InvalidParameters("tol must be positive")
    p = float(_p(bias))
    lo, hi = 0.0, 1.0
    it = 0
    while hi - lo >= tol:
        it += 1
        if it > max_iter:
            raise ConvergenceError("ternary search did not converge")
        a = lo + (hi - lo) / 3
        b = hi - (hi - lo) / 3
        if f_rate(a, k, p) < f_rate(b, k, p):
            lo = a
        else:
            hi = b
    x0 = 0.5 * (lo + hi)
    if check and k >= 3 and p <= 0.5:
        xm, xp = x_bounds(k, p)
        if not (xm < x0 <= xp + tol):
            raise ConvergenceError(f"maximiser {x0} outside ({xm}, {xp}]")
    return x0, float(f_rate(x0, k, p))


def alpha2(bias) -> float:
    p = float(_p(bias))
    return 1.0 / (4 * p * (1 - p))


def ucp_bound(k: int, bias) -> float:
    """Density m/n below which UCP succeeds with positive probability."""
    p = float(_p(bias))
    return k**-2 * (2 * p * (1 - p)) ** (1 - k)


def single_flip_bound(k: int, bias, alpha_k_half=None) -> float:
    """2 p^(1-k) alpha_k(1/2); ``alpha_k_half`` defaults to the first-moment value 2^k ln 2."""
    p = float(_p(bias))
    if alpha_k_half is None:
        alpha_k_half = 2.0**k * math.log(2)
    return 2 * p ** (1 - k) * alpha_k_half


def x_star(K: float) -> float:
    """Smaller root of 2x^2 - 2x - 2^(-1/K) + 1 = 0."""
    if K <= 0:
        raise DomainError("K must be positive")
    disc = 2 * 2.0 ** (-1 / K) - 1
    if disc < 0:
        raise DomainError(f"negative discriminant for K={K}")
    return (1 - math.sqrt(disc)) / 2


def in_I_K(x, K: float):
    """Membership in {x : 2x^2 + 2x + 2^(-1/K) - 1 >= 0}.

    Note this set is not the one cut out by the quadratic defining ``x_star``
    (the linear terms differ in sign); both are exposed as written.
    """
    x = np.asarray(x, dtype=float)
    out = 2 * x**2 + 2 * x + 2.0 ** (-1 / K) - 1 >= 0
    return bool(out) if out.ndim == 0 else out


def cs_x(k: int, t: float, y: float) -> float:
    """Sparsity scale x for a random k-uniform hypergraph with t n edges."""
    if y * (k - 1) - 1 <= 0:
        raise DomainError("need y > 1/(k-1)")
    return ((1 / (2 * math.e)) * (y / (t * math.e)) ** y) ** (1 / (y * (k - 1) - 1))


def default_delta0(k: int) -> float:
    return math.exp(-5 * k)


def default_K_k(k: int) -> float:
    return 2.0 ** (8 * k)


def parabola_bounds(k: int, b: float, K_k=None, delta0=None) -> dict:
    """Multiplicative bounds on alpha_k(1/2 - b) / alpha_k(1/2)."""
    K_k = default_K_k(k) if K_k is None else K_k
    delta0 = default_delta0(k) if delta0 is None else delta0
    return {
        "lo": 1 + 2 * k * b * b,
        "hi": 1 + K_k * b * b,
        "lo_exp": math.exp(2 * k * b * b),
        "hi_exp": _safe_exp(2 * k**3 * 2**k / delta0 * b * b),
    }


def _safe_exp(x: float) -> float:
    return math.exp(x) if x < 709 else math.inf


def second_moment_ratio(i: int, n: int, k: int, bias, m: float) -> float:
    """E[Z^2]/E[Z]^2 for Z = number of uncovered layer-``i`` vertices after a
    Poisson(m) number of clauses."""
    if n > 10**4:
        raise InvalidParameters("second_moment_ratio sums exactly; n <= 10^4")
    _check_layer(i, n, k)
    if m == 0:
        return 1.0
    rs = np.arange(min(i, n - i) + 1)
    pq = np.array([float(pair_q_exact(i, n, 2 * r, k, bias)) for r in rs])
    terms = pq * m + log_comb(i, rs) + log_comb(n - i, rs) - log_comb(n, i)
    return float(np.exp(logsumexp(terms)))


@dataclass
class GProfile:
    z: np.ndarray
    g: np.ndarray
    second_diff: np.ndarray
    concave: bool
    negative: bool


def g_profile(x: float, n: int, k: int, bias=None, eps: float = 0.1, grid=None, lo=None) -> GProfile:
    """g(z) = log[C(i,zn) C(n-i,zn) C(n,i)^(-1+(1-eps)(1-2z)^(k-1))], i = x n, on [lo, x].

    ``lo`` defaults to eps*x/4.  The bias does not enter g; it is accepted for
    signature symmetry with the other calculators.
    """
    i = x * n
    lo = eps * x / 4 if lo is None else lo
    if grid is None:
        grid = 201
    z = np.linspace(lo, x, int(grid)) if np.isscalar(grid) else np.asarray(grid, float)
    if z.size < 3 or not np.all(np.diff(z) > 0) or z[0] <= 0:
        raise DomainError("degenerate z grid")
    zn = z * n
    zn = np.minimum(zn, min(i, n - i))
    g = log_comb(i, zn) + log_comb(n - i, zn) + (-1 + (1 - eps) * (1 - 2 * z) ** (k - 1)) * log_comb(n, i)
    d2 = np.diff(g, 2)
    return GProfile(z, g, d2, bool(np.all(d2 <= 1e-9 * np.abs(g).max())), bool(np.all(g < 0)))


@dataclass
class BoundReport:
    k: int
    p: float
    b: float
    q_exact: float
    q_asym: float
    c_px_exact: float
    c_px_asym: float
    x_minus: float
    x_plus: float
    x_star: float
    x0: float
    c_p: float
    alpha2: float
    ucp_bound: float
    single_flip_bound: float
    parabola_lo: float
    parabola_hi: float
    cs_x: float
    K: float
    K_k: float
    delta0: float

    def to_dict(self):
        return asdict(self)


def closed_form_bounds(
    k: int, bias, K: float = 1.0, alpha_k_half=None, n: int = 10**4, t: float = 1.0, y: float = 1.0,
    K_k=None, delta0=None,
) -> BoundReport:
    """Every calculator evaluated at (k, p).  The layer-dependent entries
    (q, c_px) are taken at the maximiser x0, with exact values at size ``n``."""
    p = float(_p(bias))
    if p > 0.5:
        p = 1 - p
    x_minus, x_plus = x_bounds(k, p) if k >= 3 else (float("nan"), float("nan"))
    x0, cp = c_p_maximize(k, p, check=k >= 3)
    j = int(round(x0 * n))
    par = parabola_bounds(k, 0.5 - p, K_k, delta0)
    return BoundReport(
        k=k,
        p=p,
        b=0.5 - p,
        q_exact=float(q_exact(n - j, n, k, p)),
        q_asym=float(eta(p, x0) ** k),
        c_px_exact=c_px(x0, n, k, p, "exact"),
        c_px_asym=c_px(x0, n, k, p, "asym"),
        x_minus=x_minus,
        x_plus=x_plus,
        x_star=x_star(K),
        x0=x0,
        c_p=cp,
        alpha2=alpha2(p),
        ucp_bound=ucp_bound(k, p),
        single_flip_bound=single_flip_bound(k, p, alpha_k_half),
        parabola_lo=par["lo"],
        parabola_hi=par["hi"],
        cs_x=cs_x(k, t, y) if y * (k - 1) > 1 else float("nan"),
        K=K,
        K_k=default_K_k(k) if K_k is None else K_k,
        delta0=default_delta0(k) if delta0 is None else delta0,
    )
