import numpy as np
from scipy.optimize import isotonic_regression
from scipy.stats import norm

Z99 = float(norm.ppf(0.995))


def wilson(successes, trials, z: float = Z99):
    """Wilson score interval (lo, hi); works elementwise on arrays."""
    k = np.asarray(successes, dtype=float)
    n = np.asarray(trials, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        ph = k / n
        den = 1 + z * z / n
        centre = (ph + z * z / (2 * n)) / den
        half = z * np.sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / den
    return centre - half, centre + half


def decreasing_fit(y, weights=None) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.size == 0:
        return y
    return isotonic_regression(y, weights=weights, increasing=False).x


def crossing(x, y, level: float = 0.5):
    """First x at which a non-increasing curve y drops below ``level``,
    linearly interpolated; None if it never does."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    below = np.flatnonzero(y < level)
    if below.size == 0:
        return None
    j = below[0]
    if j == 0:
        return float(x[0])
    x0, x1, y0, y1 = x[j - 1], x[j], y[j - 1], y[j]
    if y0 == y1:
        return float(x1)
    return float(x0 + (y0 - level) * (x1 - x0) / (y0 - y1))


def mean_ci(values, z: float = Z99):
    v = np.asarray(values, dtype=float)
    m = v.mean()
    se = v.std(ddof=1) / np.sqrt(v.size) if v.size > 1 else float("inf")
    return float(m), float(z * se)


def ratio_ci(num, den, z: float = Z99):
    """sum(num)/sum(den) with a delta-method (cluster-robust) half-width."""
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    n = num.size
    D = den.sum()
    if D == 0:
        return float("nan"), float("inf")
    r = num.sum() / D
    resid = num - r * den
    var = n / max(n - 1, 1) * (resid**2).sum() / D**2
    return float(r), float(z * np.sqrt(var))
