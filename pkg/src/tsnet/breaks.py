"""Coefficient stability tests for predictive regressions.

All tests here address instability of the slope in y_t = a + b'x_{t-1}
+ u_t when x may be highly persistent.  The Wald statistics compare
regime-split estimates under global demeaning (each regime-indicator
regressor block is centered at its full-sample mean), which is what
makes the sup statistic converge to the normalized Brownian bridge
functional sup_pi ||BB(pi)||^2 / (pi (1 - pi)) instead of the standard
sup-chi-square limit; `nbb_sup_mc` tabulates that limit.  The LM
statistics are partial-sum score tests against random-walk coefficient
drift, and `me_monitor` is a rolling-window real-time monitoring
statistic calibrated on a historical sample.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._checks import as_matrix, as_series, check_positive_int
from .series import RngSpec, _resolve_rng
from .tables import DEFAULT_PROBS, QuantileTable

__all__ = [
    "WaldBreakResult",
    "split_wald",
    "SupWaldResult",
    "sup_wald",
    "nbb_sup_mc",
    "LmResult",
    "lm_nyblom",
    "MeResult",
    "me_monitor",
]


def _predictive_pairs(y, x):
    y_arr = as_series(y, "y", min_len=8)
    x_arr = as_matrix(x, "x", min_len=8)
    if x_arr.shape[0] != y_arr.shape[0]:
        raise ValueError("y and x must have equal length")
    return y_arr[1:], x_arr[:-1]


@dataclass(frozen=True)
class WaldBreakResult:
    """Wald statistic for equal slopes across a split at pair index k."""

    stat: float
    k: int
    pi: float
    beta1: np.ndarray
    beta2: np.ndarray
    sigma2: float
    nobs: int


def _wald_at_k(ys, xl, k: int) -> WaldBreakResult:
    m, d = xl.shape
    y_c = ys - ys.mean()
    ind1 = np.zeros(m)
    ind1[:k] = 1.0
    X1 = xl * ind1[:, None]
    X2 = xl * (1.0 - ind1)[:, None]
    X = np.column_stack([X1 - X1.mean(axis=0), X2 - X2.mean(axis=0)])
    G = X.T @ X
    theta = np.linalg.solve(G, X.T @ y_c)
    resid = y_c - X @ theta
    dof = m - 2 * d - 1
    sigma2 = float(resid @ resid / dof)
    diff = theta[:d] - theta[d:]
    G_inv = np.linalg.inv(G)
    R_cov = G_inv[:d, :d] + G_inv[d:, d:] - G_inv[:d, d:] - G_inv[d:, :d]
    stat = float(diff @ np.linalg.solve(sigma2 * R_cov, diff))
    return WaldBreakResult(stat=stat, k=k, pi=k / m, beta1=theta[:d],
                           beta2=theta[d:], sigma2=sigma2, nobs=m)


def split_wald(y, x, k: int | None = None, pi0: float | None = None) -> WaldBreakResult:
    """Wald test of slope equality across a single known break point.

    The split is at pair index k (y_t is paired with x_{t-1}; regime 1
    holds the first k pairs), or at k = floor(pi0 * m).  Under the null
    with an interior break fraction the statistic is asymptotically
    chi-square with d degrees of freedom.
    """
    ys, xl = _predictive_pairs(y, x)
    m, d = xl.shape
    if (k is None) == (pi0 is None):
        raise ValueError("give exactly one of k and pi0")
    if pi0 is not None:
        if not 0 < pi0 < 1:
            raise ValueError("pi0 must lie in (0, 1)")
        k = int(np.floor(pi0 * m))
    k = int(k)
    if not d + 1 <= k <= m - d - 1:
        raise ValueError(f"break index {k} leaves a regime too small to fit")
    return _wald_at_k(ys, xl, k)


@dataclass(frozen=True)
class SupWaldResult:
    """Supremum of the split Wald statistic over a trimmed break grid."""

    stat: float
    k_star: int
    pi_star: float
    path: np.ndarray
    k_grid: np.ndarray
    nobs: int


def _sup_wald_scalar(ys, xl, k_grid) -> np.ndarray:
    """Closed-form W(k) path for one regressor, vectorized over k."""
    m = ys.shape[0]
    x = xl[:, 0]
    y_c = ys - ys.mean()
    cx = np.cumsum(x)[k_grid - 1]
    cxx = np.cumsum(x * x)[k_grid - 1]
    cxy = np.cumsum(x * y_c)[k_grid - 1]
    tx, txx, txy = x.sum(), (x * x).sum(), (x * y_c).sum()
    syy = float(y_c @ y_c)

    g11 = cxx - cx**2 / m
    g22 = (txx - cxx) - (tx - cx) ** 2 / m
    g12 = -cx * (tx - cx) / m
    det = g11 * g22 - g12**2
    g1 = cxy
    g2 = txy - cxy
    beta1 = (g22 * g1 - g12 * g2) / det
    beta2 = (g11 * g2 - g12 * g1) / det
    ssr = syy - (beta1 * g1 + beta2 * g2)
    sigma2 = ssr / (m - 3)
    r_cov = (g11 + g22 + 2.0 * g12) / det
    return (beta1 - beta2) ** 2 / (sigma2 * r_cov)


def sup_wald(y, x, trim: tuple[float, float] = (0.15, 0.85)) -> SupWaldResult:
    """Supremum Wald statistic over break fractions in the trim range.

    The scalar-regressor case runs in O(m) via cumulative moments; the
    multivariate case solves the split system at each grid point.
    """
    if not (0 < trim[0] < trim[1] < 1):
        raise ValueError("trim fractions must satisfy 0 < lo < hi < 1")
    ys, xl = _predictive_pairs(y, x)
    m, d = xl.shape
    lo = max(int(np.ceil(trim[0] * m)), d + 1)
    hi = min(int(np.floor(trim[1] * m)), m - d - 1)
    if lo > hi:
        raise ValueError("trimming leaves no admissible break points")
    k_grid = np.arange(lo, hi + 1)
    if d == 1:
        path = _sup_wald_scalar(ys, xl, k_grid)
    else:
        path = np.array([_wald_at_k(ys, xl, int(k)).stat for k in k_grid])
    best = int(np.argmax(path))
    return SupWaldResult(stat=float(path[best]), k_star=int(k_grid[best]),
                         pi_star=float(k_grid[best] / m), path=path,
                         k_grid=k_grid, nobs=m)


def nbb_sup_mc(p: int = 1, trim: tuple[float, float] = (0.15, 0.85),
               reps: int = 50000, rng: RngSpec | None = None,
               grid: int = 1000, probs=DEFAULT_PROBS,
               batch: int = 2000) -> QuantileTable:
    """Simulate sup_pi ||BB(pi)||^2 / (pi(1-pi)) over the trimmed range.

    BB is a p-dimensional standard Brownian bridge discretized on a
    uniform grid; this is the null limit of `sup_wald`.
    """
    p = check_positive_int(p, "p")
    reps = check_positive_int(reps, "reps", minimum=100)
    if not (0 < trim[0] < trim[1] < 1):
        raise ValueError("trim fractions must satisfy 0 < lo < hi < 1")
    gen = _resolve_rng(rng if rng is not None else RngSpec(0))
    t = np.arange(1, grid + 1) / grid
    keep = (t >= trim[0]) & (t <= trim[1])
    t_keep = t[keep]
    denom = t_keep * (1.0 - t_keep)
    draws = np.empty(reps)
    done = 0
    while done < reps:
        b = min(batch, reps - done)
        w = np.cumsum(gen.standard_normal((b, grid, p)), axis=1) / np.sqrt(grid)
        bb = w - t[None, :, None] * w[:, -1:, :]
        norm2 = np.sum(bb[:, keep, :] ** 2, axis=2)
        draws[done:done + b] = np.max(norm2 / denom[None, :], axis=1)
        done += b
    detail = f"sup-normalized-bridge p={p} trim=({trim[0]}, {trim[1]}) grid={grid}"
    return QuantileTable.from_draws(draws, reps, probs, detail)


@dataclass(frozen=True)
class LmResult:
    """Partial-sum LM statistics against random-walk coefficient drift.

    lm tests (intercept, slope) jointly; lm1 isolates the intercept
    (and equals the KPSS level statistic of the residuals); lm2
    isolates the slope.
    """

    lm: float
    lm1: float
    lm2: float
    sigma2: float
    nobs: int


def lm_nyblom(y, x) -> LmResult:
    """Score-based stability statistics for a scalar predictive slope.

    Fits y_t = a + b x_{t-1} + b0 dx_t + e_t (the dx_t term absorbs the
    contemporaneous innovation), then cumulates the scores of
    X_t = (1, x_{t-1})':

        LM  = (m s2)^{-1} sum_j P_j' (sum_t X_t X_t')^{-1} P_j
        LM1 = (m^2 s2)^{-1} sum_j (sum_{t<=j} e_t)^2
        LM2 = (m s2 sum_t x_{t-1}^2)^{-1} sum_j (sum_{t<=j} x_{t-1} e_t)^2

    with P_j = sum_{t<=j} X_t e_t and s2 = m^{-1} sum e_t^2.
    """
    ys, xl = _predictive_pairs(y, x)
    if xl.shape[1] != 1:
        raise ValueError("lm_nyblom is defined for a single regressor")
    xlag = xl[:, 0]
    m = ys.shape[0]
    dx = np.diff(as_matrix(x, "x")[:, 0])
    Z = np.column_stack([np.ones(m), xlag, dx])
    coef = np.linalg.solve(Z.T @ Z, Z.T @ ys)
    e = ys - Z @ coef
    sigma2 = float(np.mean(e**2))

    X = np.column_stack([np.ones(m), xlag])
    P = np.cumsum(X * e[:, None], axis=0)
    XtX_inv = np.linalg.inv(X.T @ X)
    lm = float(np.sum((P @ XtX_inv) * P) / (m * sigma2))
    lm1 = float(np.sum(P[:, 0] ** 2) / (m**2 * sigma2))
    lm2 = float(np.sum(P[:, 1] ** 2) / (m * sigma2 * np.sum(xlag**2)))
    return LmResult(lm=lm, lm1=lm1, lm2=lm2, sigma2=sigma2, nobs=m)


@dataclass(frozen=True)
class MeResult:
    """Rolling-window monitoring statistic path and its maximum."""

    stat: float
    path: np.ndarray
    k_grid: np.ndarray
    window: int
    beta_hist: np.ndarray


def me_monitor(y, x, n_hist: int, h: float = 0.1) -> MeResult:
    """Monitor y_t = x_t'b + u_t for drift after a historical sample.

    The historical sample t = 1..n_hist calibrates the full-sample
    estimate b-hat, the residual scale sigma-hat, and the design moment
    Q = n_hist^{-1} sum x_t x_t'.  For each monitoring time k the
    window estimate b-tilde(k) over t in (k, k + win], win =
    floor(h * n_hist), yields

        ME_k = (win / (sigma-hat sqrt(n_hist)))
               * || Q^{1/2} (b-tilde(k) - b-hat) ||

    and the path runs over k = n_hist .. n - win.  With drift-free data
    and u identically zero the path is identically zero: a historical
    fit whose residual variance is pure roundoff (relative to the scale
    of y) has no noise scale to standardize by, and the path is zero by
    convention rather than a ratio of rounding errors.
    """
    y_arr = as_series(y, "y", min_len=8)
    x_arr = as_matrix(x, "x", min_len=8)
    n = y_arr.shape[0]
    if x_arr.shape[0] != n:
        raise ValueError("y and x must have equal length")
    d = x_arr.shape[1]
    n_hist = check_positive_int(n_hist, "n_hist", minimum=d + 2)
    if not 0 < h <= 1:
        raise ValueError("h must lie in (0, 1]")
    win = int(np.floor(h * n_hist))
    if win < d + 1:
        raise ValueError("window too short to identify the coefficients")
    if n < n_hist + win:
        raise ValueError("no monitoring observations beyond the history")

    xh = x_arr[:n_hist]
    yh = y_arr[:n_hist]
    Q = xh.T @ xh / n_hist
    beta_hist = np.linalg.solve(xh.T @ xh, xh.T @ yh)
    resid = yh - xh @ beta_hist
    sigma2 = float(resid @ resid / (n_hist - d))
    if sigma2 <= 1e-20 * max(float(np.mean(yh**2)), np.finfo(float).tiny):
        k_grid = np.arange(n_hist, n - win + 1)
        return MeResult(stat=0.0, path=np.zeros(k_grid.size), k_grid=k_grid,
                        window=win, beta_hist=beta_hist)
    sigma = np.sqrt(sigma2)

    evals, evecs = np.linalg.eigh(Q)
    if np.any(evals <= 0):
        raise ValueError("historical design moment is singular")
    Q_half = evecs @ np.diag(np.sqrt(evals)) @ evecs.T

    outer = x_arr[:, :, None] * x_arr[:, None, :]
    cum_xx = np.concatenate([np.zeros((1, d, d)), np.cumsum(outer, axis=0)])
    cum_xy = np.concatenate([np.zeros((1, d)), np.cumsum(x_arr * y_arr[:, None], axis=0)])

    k_grid = np.arange(n_hist, n - win + 1)
    path = np.empty(k_grid.size)
    scale = win / (sigma * np.sqrt(n_hist))
    for pos, k in enumerate(k_grid):
        gram = cum_xx[k + win] - cum_xx[k]
        mom = cum_xy[k + win] - cum_xy[k]
        beta_win = np.linalg.solve(gram, mom)
        path[pos] = scale * np.linalg.norm(Q_half @ (beta_win - beta_hist))
    best = int(np.argmax(path))
    return MeResult(stat=float(path[best]), path=path, k_grid=k_grid,
                    window=win, beta_hist=beta_hist)
