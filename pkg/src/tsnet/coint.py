"""Cointegrating regression: fully modified OLS and residual diagnostics.

The levels regression y_t = a + b'x_t + eps_t with integrated x is
estimated by OLS and then fully modified: the dependent variable is
purged of the regressor innovations (endogeneity correction) and the
normal equations are recentered by the one-sided long-run covariance
(serial correlation correction).  Both corrections come from one joint
kernel LRV of (eps-hat_t, dx_t - mean(dx)).

On top of the FM fit sit the Shin residual statistic for the null of
cointegration and a Wald-type coefficient stability test built from the
fully modified score process.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._checks import as_matrix, as_series
from .lrv import KernelSpec, LrvEstimate, hac_lrv

__all__ = ["FmolsResult", "fmols", "ShinResult", "shin_vn", "FkResult", "fk_break_test"]


@dataclass(frozen=True)
class FmolsResult:
    """Fully modified OLS fit of y_t = a + b'x_t + eps_t.

    beta_plus stacks the intercept first, then the d slope
    coefficients; se and t_plus follow the same layout (t_plus tests
    each coefficient against zero).  residuals_plus are the fully
    modified residuals y+_t - z_t'beta_plus, delta_plus the one-sided
    correction vector, omega_cond the conditional long-run variance
    Omega_{eps.eta}.  The first observation is reserved for the
    regressor difference, so nobs = len(y) - 1.
    """

    beta_plus: np.ndarray
    beta_ols: np.ndarray
    se: np.ndarray
    t_plus: np.ndarray
    cov: np.ndarray
    omega_cond: float
    delta_plus: np.ndarray
    residuals_plus: np.ndarray
    residuals_ols: np.ndarray
    lrv: LrvEstimate
    nobs: int

    @property
    def slopes(self) -> np.ndarray:
        return self.beta_plus[1:]


def fmols(y, x, kernel: KernelSpec | None = None) -> FmolsResult:
    """Fully modified least squares for a cointegrating regression.

    Steps: (i) OLS of y_t on (1, x_t) over t = 2..n; (ii) joint kernel
    LRV of u_t = (eps-hat_t, (dx_t - mean dx)'), giving two-sided Omega,
    one-sided Lambda, and Delta = Gamma0 + Lambda; (iii) endogeneity
    correction y+_t = y_t - Omega_{eps eta} Omega_{eta eta}^{-1}
    (dx_t - mean dx); (iv) bias correction delta+' = Delta_{eps eta} -
    Omega_{eps eta} Omega_{eta eta}^{-1} Delta_{eta eta}; (v)

        beta+ = (Z'Z)^{-1} (Z'y+ - m [0; delta+]),

    m the number of usable observations.  Standard errors use the
    conditional long-run variance: cov = Omega_{eps.eta} (Z'Z)^{-1}.
    """
    y_arr = as_series(y, "y", min_len=8)
    x_arr = as_matrix(x, "x", min_len=8)
    n = y_arr.shape[0]
    if x_arr.shape[0] != n:
        raise ValueError("y and x must have equal length")
    d = x_arr.shape[1]

    dx = np.diff(x_arr, axis=0)
    eta = dx - dx.mean(axis=0)
    ys = y_arr[1:]
    xs = x_arr[1:]
    m = n - 1

    Z = np.column_stack([np.ones(m), xs])
    ZtZ = Z.T @ Z
    beta_ols = np.linalg.solve(ZtZ, Z.T @ ys)
    eps_ols = ys - Z @ beta_ols

    u = np.column_stack([eps_ols, eta])
    est = hac_lrv(u, kernel=kernel, demean=False)
    omega = est.omega
    delta = est.gamma0 + est.lam  # one-sided including lag zero

    omega_ee = omega[0, 0]
    omega_ex = omega[0, 1:]
    omega_xx = omega[1:, 1:]
    solve_xx = np.linalg.solve(omega_xx, np.eye(d))
    endo = omega_ex @ solve_xx

    y_plus = ys - eta @ endo
    delta_plus = delta[0, 1:] - endo @ delta[1:, 1:]
    correction = np.concatenate([[0.0], delta_plus])
    beta_plus = np.linalg.solve(ZtZ, Z.T @ y_plus - m * correction)

    omega_cond = float(omega_ee - omega_ex @ solve_xx @ omega[1:, 0])
    cov = omega_cond * np.linalg.inv(ZtZ)
    se = np.sqrt(np.diag(cov))
    resid_plus = y_plus - Z @ beta_plus
    return FmolsResult(beta_plus=beta_plus, beta_ols=beta_ols, se=se,
                       t_plus=beta_plus / se, cov=cov, omega_cond=omega_cond,
                       delta_plus=delta_plus, residuals_plus=resid_plus,
                       residuals_ols=eps_ols, lrv=est, nobs=m)


@dataclass(frozen=True)
class ShinResult:
    """Residual-based statistic for the null of cointegration."""

    v_n: float
    sigma2: float
    nobs: int
    short_run: bool


def shin_vn(y, x=None, kernel: KernelSpec | None = None,
            short_run: bool = False) -> ShinResult:
    """Cumulated-residual statistic V_n = n^{-2} sum_t S_t^2 / sigma2.

    With x given, the residuals come from OLS of y_t on (1, x_t) over
    the full sample; with x=None, y itself is treated as a residual
    series (used for direct checks).  sigma2 is the kernel long-run
    variance of the residuals by default, or the short-run average
    squared residual when short_run=True.
    """
    y_arr = as_series(y, "y", min_len=4)
    n = y_arr.shape[0]
    if x is None:
        resid = y_arr
    else:
        x_arr = as_matrix(x, "x", min_len=4)
        if x_arr.shape[0] != n:
            raise ValueError("y and x must have equal length")
        Z = np.column_stack([np.ones(n), x_arr])
        beta = np.linalg.solve(Z.T @ Z, Z.T @ y_arr)
        resid = y_arr - Z @ beta
    if short_run:
        sigma2 = float(np.mean(resid**2))
    else:
        sigma2 = hac_lrv(resid, kernel=kernel, demean=False).scalar
    s = np.cumsum(resid)
    v_n = float(np.sum(s**2) / (n**2 * sigma2))
    return ShinResult(v_n=v_n, sigma2=sigma2, nobs=n, short_run=short_run)


@dataclass(frozen=True)
class FkResult:
    """Score-based coefficient stability test on the FM fit.

    path holds F_k over the trimmed break grid (k counts usable
    observations), stat the supremum.  At a fixed interior k, F_k is
    asymptotically chi-square with dof equal to the number of tested
    coefficients (the d slopes by default).
    """

    stat: float
    k_star: int
    path: np.ndarray
    k_grid: np.ndarray
    dof: int
    fm: FmolsResult


def fk_break_test(y, x, kernel: KernelSpec | None = None,
                  trim: tuple[float, float] = (0.15, 0.85),
                  k: int | None = None,
                  include_intercept: bool = False) -> FkResult:
    """Structural stability of the cointegrating coefficients.

    Builds the per-observation fully modified score
    s_t = z_t eps+_t - [0; delta+] (which sums to zero over the full
    sample by the FM normal equations) and, for each candidate break
    k in the trimmed range,

        F_k = S_k' [Omega_{eps.eta} V_k]^{-1} S_k,
        V_k = M_k - M_k M_T^{-1} M_k,   M_k = sum_{t<=k} z_t z_t'.

    Passing k evaluates F at that single break date (counted in usable
    observations) instead of scanning the trimmed grid; the statistic
    is then the fixed-k chi-square test rather than a supremum.

    By default only the slope rows/blocks enter (the intercept is a
    nuisance), giving a chi2_d fixed-k limit; include_intercept=True
    tests the full coefficient vector (chi2_{d+1}).
    """
    if k is None and not (0 < trim[0] < trim[1] < 1):
        raise ValueError("trim fractions must satisfy 0 < lo < hi < 1")
    fm = fmols(y, x, kernel=kernel)
    m = fm.nobs
    x_arr = as_matrix(x, "x")[1:]
    Z = np.column_stack([np.ones(m), x_arr])
    scores = Z * fm.residuals_plus[:, None]
    scores -= np.concatenate([[0.0], fm.delta_plus])[None, :]
    S = np.cumsum(scores, axis=0)

    outer = Z[:, :, None] * Z[:, None, :]
    M = np.cumsum(outer, axis=0)
    M_T = M[-1]
    M_T_inv = np.linalg.inv(M_T)

    p = Z.shape[1]
    if k is not None:
        k = int(k)
        if not (p <= k <= m - p):
            raise ValueError(f"fixed break k={k} must lie in [{p}, {m - p}] "
                             f"so both regimes identify the coefficients")
        k_grid = np.array([k])
    else:
        lo = int(np.ceil(trim[0] * m))
        hi = int(np.floor(trim[1] * m))
        k_grid = np.arange(max(lo, 1), min(hi, m - 1) + 1)
        if k_grid.size == 0:
            raise ValueError("trimming leaves no admissible break points")

    sel = slice(None) if include_intercept else slice(1, None)
    path = np.empty(k_grid.size)
    for pos, kb in enumerate(k_grid):
        Mk = M[kb - 1]
        Vk = (Mk - Mk @ M_T_inv @ Mk)[sel, sel]
        Sk = S[kb - 1, sel]
        path[pos] = Sk @ np.linalg.solve(fm.omega_cond * Vk, Sk)
    best = int(np.argmax(path))
    dof = p if include_intercept else p - 1
    return FkResult(stat=float(path[best]), k_star=int(k_grid[best]),
                    path=path, k_grid=k_grid, dof=dof, fm=fm)
