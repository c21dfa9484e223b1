"""Predictive regression with instrumented persistence (IVX).

OLS inference on y_t = a + b'x_{t-1} + u_t is fragile when x is nearly
integrated: the t-statistic's null distribution depends on the unknown
local-to-unity parameter.  The IVX approach self-generates a mildly
integrated instrument from the regressor's own differences,

    z_t = rho_nz z_{t-1} + dx_t,   rho_nz = 1 + c_z / n^{beta_z},

which is persistent enough to retain power yet mild enough that Wald
statistics are chi-square under the null for any persistence of x.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from ._checks import as_matrix, as_series
from .lrv import KernelSpec, hac_lrv

__all__ = ["IvxSpec", "IvxResult", "ivx_instrument", "ivx_estimate", "ivx_wald"]


@dataclass(frozen=True)
class IvxSpec:
    """Instrument persistence rho_nz = 1 + c_z / n^beta_z.

    Defaults (c_z, beta_z) = (-1, 0.95): mildly integrated just below
    the unit root.
    """

    c_z: float = -1.0
    beta_z: float = 0.95

    def __post_init__(self):
        if not (np.isfinite(self.c_z) and self.c_z < 0):
            raise ValueError("c_z must be negative")
        if not (0 < self.beta_z <= 1):
            raise ValueError("beta_z must lie in (0, 1]")

    def rho(self, n: int) -> float:
        return 1.0 + self.c_z / float(n) ** self.beta_z


def ivx_instrument(x, spec: IvxSpec = IvxSpec()) -> np.ndarray:
    """Build the instrument from the differences of x.

    For x of length n the output has length n - 1: row t is
    z_{t+1} = sum_{j=2}^{t+1} rho^{t+1-j} dx_j, i.e. the recursion
    z = rho z_prev + dx run over the observed differences from a zero
    start.  rho uses the full series length n.
    """
    x_arr = as_matrix(x, "x", min_len=2)
    n = x_arr.shape[0]
    rho = spec.rho(n)
    dx = np.diff(x_arr, axis=0)
    z = np.empty_like(dx)
    prev = np.zeros(dx.shape[1])
    for t in range(dx.shape[0]):
        prev = rho * prev + dx[t]
        z[t] = prev
    return z


@dataclass(frozen=True)
class IvxResult:
    """IVX estimate of the slope vector in y_t = a + b'x_{t-1} + u_t.

    cov is the sandwich (sum z x')^{-1} (sum z z' s2_u) (sum x z')^{-1};
    wald and pvalue test b = 0 jointly.
    """

    beta: np.ndarray
    se: np.ndarray
    cov: np.ndarray
    sigma2_u: float
    rho_nz: float
    wald: float
    pvalue: float
    nobs: int
    demeaned: bool


def ivx_estimate(y, x, spec: IvxSpec = IvxSpec(), demean: bool = True,
                 hac: KernelSpec | None = None) -> IvxResult:
    """Instrumented estimation of the predictive slope.

    Pairs y_t with x_{t-1} for t = 2..n and instruments x_{t-1} by the
    self-generated z_{t-1} (zero for t = 2, then the difference
    recursion).  With demean=True (an intercept in the model), y and
    the lagged regressor are centered but the instrument is not.

    s2_u uses divisor (#pairs - d).  The default sandwich meat is the
    homoskedastic sum z z' s2_u; pass a KernelSpec as hac to replace it
    with a kernel long-run variance of the score z_t u_t, which guards
    against serially correlated or heteroskedastic errors.
    """
    y_arr = as_series(y, "y", min_len=8)
    x_arr = as_matrix(x, "x", min_len=8)
    n = y_arr.shape[0]
    if x_arr.shape[0] != n:
        raise ValueError("y and x must have equal length")
    d = x_arr.shape[1]

    ys = y_arr[1:]
    xlag = x_arr[:-1]
    m = ys.shape[0]
    zfull = ivx_instrument(x_arr, spec)
    zins = np.vstack([np.zeros((1, d)), zfull[:m - 1]])

    if demean:
        ys = ys - ys.mean()
        xlag = xlag - xlag.mean(axis=0)

    A = zins.T @ xlag
    beta = np.linalg.solve(A, zins.T @ ys)
    resid = ys - xlag @ beta
    sigma2_u = float(resid @ resid / (m - d))
    A_inv = np.linalg.inv(A)
    if hac is None:
        meat = (zins.T @ zins) * sigma2_u
    else:
        # scores are centered by the moment condition, not demeaned again
        meat = m * hac_lrv(zins * resid[:, None], kernel=hac,
                           demean=False).omega
    cov = A_inv @ meat @ A_inv.T
    cov = (cov + cov.T) / 2.0
    se = np.sqrt(np.diag(cov))
    wald = float(beta @ np.linalg.solve(cov, beta))
    pvalue = float(stats.chi2.sf(wald, d))
    return IvxResult(beta=beta, se=se, cov=cov, sigma2_u=sigma2_u,
                     rho_nz=spec.rho(n), wald=wald, pvalue=pvalue,
                     nobs=m, demeaned=demean)


def ivx_wald(result: IvxResult, R=None, r=None) -> tuple[float, float]:
    """Wald test of R b = r on an IVX fit; returns (statistic, p-value).

    Defaults test the full null b = 0.  The statistic is chi-square
    with rank(R) degrees of freedom under the null regardless of the
    regressor's persistence class.
    """
    d = result.beta.shape[0]
    R_mat = np.eye(d) if R is None else np.atleast_2d(np.asarray(R, dtype=float))
    if R_mat.shape[1] != d:
        raise ValueError(f"R must have {d} columns")
    r_vec = np.zeros(R_mat.shape[0]) if r is None else np.atleast_1d(np.asarray(r, dtype=float))
    if r_vec.shape[0] != R_mat.shape[0]:
        raise ValueError("r length must match the rows of R")
    diff = R_mat @ result.beta - r_vec
    middle = R_mat @ result.cov @ R_mat.T
    stat = float(diff @ np.linalg.solve(middle, diff))
    pvalue = float(stats.chi2.sf(stat, R_mat.shape[0]))
    return stat, pvalue
