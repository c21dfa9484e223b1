"""Autoregressive estimation and unit root tests.

Covers least-squares AR(p) fitting, the augmented Dickey-Fuller
regression, semiparametric Z_alpha / Z_t corrections, and Monte Carlo
tabulation of the Dickey-Fuller limit functionals.  Critical values are
always simulated, never hard-coded.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._checks import as_series, check_in, check_positive_int
from .lrv import KernelSpec, hac_lrv
from .series import RngSpec, _resolve_rng
from .tables import DEFAULT_PROBS, QuantileTable

__all__ = [
    "AROls",
    "UnitRootResult",
    "DfLimitTables",
    "ols_ar",
    "adf_test",
    "default_adf_lags",
    "phillips_z",
    "df_limit_mc",
]

_DETERMINISTICS = ("none", "const", "trend")


def default_adf_lags(n: int) -> int:
    """Rule-of-thumb ADF lag order floor(4 * (n/100)^{1/4})."""
    n = check_positive_int(n, "n")
    return int(np.floor(4.0 * (n / 100.0) ** 0.25))


def _det_matrix(deterministic: str, t_index: np.ndarray) -> np.ndarray:
    """Deterministic regressors evaluated at the given time indices."""
    cols = []
    if deterministic in ("const", "trend"):
        cols.append(np.ones_like(t_index, dtype=float))
    if deterministic == "trend":
        cols.append(t_index.astype(float))
    if not cols:
        return np.empty((t_index.shape[0], 0))
    return np.column_stack(cols)


@dataclass(frozen=True)
class AROls:
    """Least-squares AR(p) fit.

    coeffs stacks deterministic coefficients first, then the AR lag
    coefficients (so ar_coeffs = coeffs[-p:]).
    """

    coeffs: np.ndarray
    ar_coeffs: np.ndarray
    residuals: np.ndarray
    cov: np.ndarray
    s2: float
    nobs: int
    p: int
    deterministic: str


def ols_ar(ts, p: int = 1, deterministic: str = "none") -> AROls:
    """Fit X_t = d_t'mu + sum_{j=1..p} rho_j X_{t-j} + e_t by OLS.

    The first p observations are used as presample; the regression runs
    over t = p+1..n.  s2 uses divisor (nobs - #regressors).
    """
    x = as_series(ts, "ts", min_len=2)
    p = check_positive_int(p, "p")
    check_in(deterministic, _DETERMINISTICS, "deterministic")
    n = x.shape[0]
    if n - p < 2:
        raise ValueError(f"series too short for AR({p}) fit")
    y = x[p:]
    t_index = np.arange(p + 1, n + 1)
    lags = np.column_stack([x[p - j:n - j] for j in range(1, p + 1)])
    X = np.column_stack([_det_matrix(deterministic, t_index), lags])
    XtX = X.T @ X
    coeffs = np.linalg.solve(XtX, X.T @ y)
    resid = y - X @ coeffs
    nobs = y.shape[0]
    dof = nobs - X.shape[1]
    if dof <= 0:
        raise ValueError("no residual degrees of freedom")
    s2 = float(resid @ resid / dof)
    cov = s2 * np.linalg.inv(XtX)
    return AROls(coeffs=coeffs, ar_coeffs=coeffs[-p:], residuals=resid,
                 cov=cov, s2=s2, nobs=nobs, p=p, deterministic=deterministic)


@dataclass(frozen=True)
class UnitRootResult:
    """Unit root test output.

    stat_coef is the normalized-bias statistic T(alpha-1) (divided by
    1 - sum of augmentation coefficients when lags are present); stat_t
    the corresponding t-ratio.  For phillips_z they are the corrected
    Z_alpha and Z_t, and s2_lr carries the kernel long-run variance.
    """

    stat_coef: float
    stat_t: float
    alpha_hat: float
    s2_u: float
    nobs: int
    deterministic: str
    method: str
    lags: int = 0
    s2_lr: float | None = None
    bandwidth: float | None = None


def adf_test(ts, p: int = 0, deterministic: str = "none") -> UnitRootResult:
    """Augmented Dickey-Fuller regression in levels form.

    X_t = d_t'mu + alpha X_{t-1} + sum_{j=1..p} phi_j dX_{t-j} + e_t,
    fitted over t = p+2..n.  Returns the t-ratio for alpha = 1 and the
    normalized bias T(alpha-1)/(1 - sum phi).
    """
    x = as_series(ts, "ts", min_len=4)
    if p < 0:
        raise ValueError("p must be >= 0")
    check_in(deterministic, _DETERMINISTICS, "deterministic")
    n = x.shape[0]
    start = p + 1  # first usable t (0-based index)
    y = x[start:]
    t_index = np.arange(start + 1, n + 1)
    cols = [x[start - 1:n - 1]]
    dx = np.diff(x)
    for j in range(1, p + 1):
        cols.append(dx[start - 1 - j:n - 1 - j])
    X = np.column_stack([_det_matrix(deterministic, t_index)] + cols)
    XtX = X.T @ X
    coeffs = np.linalg.solve(XtX, X.T @ y)
    resid = y - X @ coeffs
    nobs = y.shape[0]
    dof = nobs - X.shape[1]
    if dof <= 0:
        raise ValueError("no residual degrees of freedom")
    s2 = float(resid @ resid / dof)
    cov = s2 * np.linalg.inv(XtX)
    k_det = X.shape[1] - 1 - p
    alpha = float(coeffs[k_det])
    se_alpha = float(np.sqrt(cov[k_det, k_det]))
    if se_alpha == 0.0:
        # exact autoregression (e.g. a noiseless explosive path): the
        # t-ratio degenerates to a signed infinity
        t_stat = np.inf * np.sign(alpha - 1.0) if alpha != 1.0 else np.nan
    else:
        t_stat = (alpha - 1.0) / se_alpha
    phi_sum = float(np.sum(coeffs[k_det + 1:])) if p > 0 else 0.0
    coef_stat = nobs * (alpha - 1.0) / (1.0 - phi_sum)
    return UnitRootResult(stat_coef=coef_stat, stat_t=t_stat, alpha_hat=alpha,
                          s2_u=s2, nobs=nobs, deterministic=deterministic,
                          method="adf", lags=p)


def phillips_z(ts, kernel: KernelSpec | None = None, deterministic: str = "none",
               df_adjust: bool = True) -> UnitRootResult:
    """Semiparametric Z_alpha and Z_t unit root statistics.

    Fits X_t = d_t'mu + alpha X_{t-1} + u_t and corrects the first-order
    statistics for serial correlation in u_t through the kernel long-run
    variance of the residuals:

        Z_alpha = T(alpha-1) - (s2_lr - s2_u) / (2 T^{-2} S_xx)
        Z_t     = S_xx^{1/2}(alpha-1)/s_lr
                  - T (s2_lr - s2_u) / (2 s_lr S_xx^{1/2})

    with S_xx the (demeaned, under const) second moment of the lagged
    level.  df_adjust=False makes s2_u use divisor T, matching the
    divisor-T convention of s2_lr, so bandwidth < 1 gives s2_lr == s2_u
    and Z_alpha == T(alpha-1) exactly.

    A nonpositive LRV estimate (possible with the truncated kernel) is
    flagged with a warning; Z_alpha is still reported and Z_t is nan.
    """
    x = as_series(ts, "ts", min_len=10)
    if deterministic not in ("none", "const"):
        raise ValueError("deterministic must be 'none' or 'const'")
    n = x.shape[0]
    y = x[1:]
    ylag = x[:-1]
    T = y.shape[0]
    if deterministic == "const":
        X = np.column_stack([np.ones(T), ylag])
    else:
        X = ylag[:, None]
    coeffs = np.linalg.solve(X.T @ X, X.T @ y)
    resid = y - X @ coeffs
    alpha = float(coeffs[-1])
    k = X.shape[1]
    ssr = float(resid @ resid)
    # catches exact fits up to float fuzz (perfect lines, constants)
    if ssr <= 1e-20 * max(1.0, float(y @ y)):
        raise ValueError("residuals are numerically zero; "
                         "variance estimates degenerate")
    s2_u = ssr / (T - k) if df_adjust else ssr / T
    est = hac_lrv(resid, kernel=kernel, demean=False)
    s2_lr = est.scalar
    if deterministic == "const":
        s_xx = float(np.sum((ylag - ylag.mean()) ** 2))
    else:
        s_xx = float(np.sum(ylag**2))
    half_diff = 0.5 * (s2_lr - s2_u)
    z_alpha = T * (alpha - 1.0) - half_diff / (s_xx / T**2)
    if s2_lr <= 0.0:
        warnings.warn("nonpositive long-run variance estimate; "
                      "Z_t undefined (nan)")
        z_t = np.nan
    else:
        s_lr = np.sqrt(s2_lr)
        z_t = (np.sqrt(s_xx) * (alpha - 1.0) / s_lr
               - half_diff * T / (s_lr * np.sqrt(s_xx)))
    return UnitRootResult(stat_coef=float(z_alpha), stat_t=float(z_t),
                          alpha_hat=alpha, s2_u=s2_u, nobs=T,
                          deterministic=deterministic, method="phillips",
                          s2_lr=s2_lr, bandwidth=est.bandwidth)


@dataclass(frozen=True)
class DfLimitTables:
    """Simulated Dickey-Fuller quantiles for both statistic forms."""

    coef: QuantileTable
    t: QuantileTable
    T: int
    deterministic: str


def df_limit_mc(T: int, deterministic: str = "none", reps: int = 20000,
                rng: RngSpec | None = None, probs=DEFAULT_PROBS,
                batch: int = 2000) -> DfLimitTables:
    """Simulate quantiles of T(alpha-1) and the Dickey-Fuller t-ratio.

    Gaussian random walks of length T are generated and the first-order
    autoregression (with the requested deterministics) fitted to each;
    empirical quantiles of the coefficient and t statistics form the
    returned tables.  Used wherever unit root critical values are
    needed.
    """
    T = check_positive_int(T, "T", minimum=10)
    reps = check_positive_int(reps, "reps", minimum=100)
    check_in(deterministic, _DETERMINISTICS, "deterministic")
    gen = _resolve_rng(rng if rng is not None else RngSpec(0))
    coef_draws = np.empty(reps)
    t_draws = np.empty(reps)
    done = 0
    while done < reps:
        m = min(batch, reps - done)
        walks = np.cumsum(gen.standard_normal((m, T)), axis=1)
        y = walks[:, 1:]
        ylag = walks[:, :-1]
        te = T - 1
        if deterministic == "none":
            sxy = np.sum(ylag * y, axis=1)
            sxx = np.sum(ylag**2, axis=1)
            alpha = sxy / sxx
            resid = y - alpha[:, None] * ylag
            s2 = np.sum(resid**2, axis=1) / (te - 1)
            se = np.sqrt(s2 / sxx)
        elif deterministic == "const":
            ylag_c = ylag - ylag.mean(axis=1, keepdims=True)
            y_c = y - y.mean(axis=1, keepdims=True)
            sxx = np.sum(ylag_c**2, axis=1)
            alpha = np.sum(ylag_c * y_c, axis=1) / sxx
            resid = y_c - alpha[:, None] * ylag_c
            s2 = np.sum(resid**2, axis=1) / (te - 2)
            se = np.sqrt(s2 / sxx)
        else:  # trend
            tt = np.arange(2, T + 1, dtype=float)
            X = np.empty((m, te, 3))
            X[:, :, 0] = 1.0
            X[:, :, 1] = tt
            X[:, :, 2] = ylag
            XtX = np.einsum("rti,rtj->rij", X, X)
            Xty = np.einsum("rti,rt->ri", X, y)
            coeffs = np.linalg.solve(XtX, Xty[:, :, None])[:, :, 0]
            alpha = coeffs[:, 2]
            resid = y - np.einsum("rti,ri->rt", X, coeffs)
            s2 = np.sum(resid**2, axis=1) / (te - 3)
            inv = np.linalg.inv(XtX)
            se = np.sqrt(s2 * inv[:, 2, 2])
            sxx = None
        coef_draws[done:done + m] = te * (alpha - 1.0)
        t_draws[done:done + m] = (alpha - 1.0) / se
        done += m
    detail = f"dickey-fuller T={T} det={deterministic}"
    return DfLimitTables(
        coef=QuantileTable.from_draws(coef_draws, reps, probs, detail + " coef"),
        t=QuantileTable.from_draws(t_draws, reps, probs, detail + " t"),
        T=T, deterministic=deterministic)
