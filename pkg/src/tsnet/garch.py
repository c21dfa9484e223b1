"""GARCH(1,1) filtering, simulation, and Gaussian QMLE.

The conditional variance recursion is

    sigma2_t = omega + alpha * eps_{t-1}^2 + beta * sigma2_{t-1}

with omega > 0, alpha, beta >= 0 and alpha + beta < 1 (the integrated
boundary is excluded so the unconditional variance omega/(1-alpha-beta)
exists).  Estimation minimizes the Gaussian quasi-likelihood
sum_t (log sigma2_t + eps_t^2 / sigma2_t); the stationarity constraint
is enforced by an unconstrained reparametrization capping the
persistence at 1 - 1e-6, so every iterate is admissible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.signal import lfilter

from ._checks import as_series, check_positive_int
from .series import _resolve_rng

__all__ = ["GarchSpec", "GarchFit", "garch_filter", "garch_qmle", "simulate_garch"]

_PERSISTENCE_CAP = 1.0 - 1e-6


@dataclass(frozen=True)
class GarchSpec:
    """GARCH(1,1) parameters with an optional constant mean."""

    omega: float
    alpha: float
    beta: float
    mu: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.omega) and self.omega > 0):
            raise ValueError("omega must be positive")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be nonnegative")
        if self.alpha + self.beta >= 1:
            raise ValueError("need alpha + beta < 1")

    @property
    def unconditional_variance(self) -> float:
        return self.omega / (1.0 - self.alpha - self.beta)


def garch_filter(eps, spec: GarchSpec, sigma2_0: float | None = None,
                 eps2_0: float | None = None) -> np.ndarray:
    """Run the variance recursion over innovations eps_1..eps_n.

    Presample values default to the sample second moment of eps (both
    sigma2_0 and eps2_0), so the first output is
    omega + (alpha + beta) * sigma2_0.  Returns sigma2_1..sigma2_n.
    """
    e = as_series(eps, "eps")
    if sigma2_0 is None:
        sigma2_0 = float(np.mean(e**2))
    if eps2_0 is None:
        eps2_0 = sigma2_0
    if sigma2_0 <= 0 or eps2_0 < 0:
        raise ValueError("presample values must be positive")
    e2 = e**2
    drive = spec.omega + spec.alpha * np.concatenate([[eps2_0], e2[:-1]])
    sigma2, _ = lfilter([1.0], [1.0, -spec.beta], drive,
                        zi=np.array([spec.beta * sigma2_0]))
    return sigma2


def simulate_garch(spec: GarchSpec, n: int, rng, burn: int = 500):
    """Simulate y_t = mu + sigma_t eta_t with iid standard normal eta.

    Returns (y, sigma2), both of length n, after discarding `burn`
    start-up observations; the recursion starts at the unconditional
    variance.
    """
    n = check_positive_int(n, "n")
    gen = _resolve_rng(rng)
    total = n + burn
    eta = gen.standard_normal(total)
    sigma2 = np.empty(total)
    eps = np.empty(total)
    s2_prev = spec.unconditional_variance
    e2_prev = s2_prev
    for t in range(total):
        s2 = spec.omega + spec.alpha * e2_prev + spec.beta * s2_prev
        sigma2[t] = s2
        eps[t] = np.sqrt(s2) * eta[t]
        e2_prev = eps[t] ** 2
        s2_prev = s2
    return spec.mu + eps[burn:], sigma2[burn:]


@dataclass(frozen=True)
class GarchFit:
    """QMLE output.

    objective_path records the quasi-likelihood at the accepted iterates
    (nonincreasing along the minimization).
    """

    spec: GarchSpec
    loglik: float
    converged: bool
    n_iter: int
    objective_path: tuple[float, ...]
    sigma2: np.ndarray
    nobs: int
    ar_coeff: float | None = None


def _unpack(theta: np.ndarray) -> tuple[float, float, float]:
    w, xs, xa = theta
    omega = np.exp(w)
    persistence = _PERSISTENCE_CAP / (1.0 + np.exp(-xs))
    frac = 1.0 / (1.0 + np.exp(-xa))
    return omega, persistence * frac, persistence * (1.0 - frac)


def _pack(omega: float, alpha: float, beta: float) -> np.ndarray:
    s = min(alpha + beta, _PERSISTENCE_CAP * 0.999)
    s = max(s, 1e-4)
    a = min(max(alpha / s, 1e-4), 1 - 1e-4)
    ps = s / _PERSISTENCE_CAP
    return np.array([np.log(omega), np.log(ps / (1 - ps)), np.log(a / (1 - a))])


def garch_qmle(y, mean: str = "constant") -> GarchFit:
    """Gaussian QMLE of a GARCH(1,1) with a constant or AR(1) mean.

    mean="constant" filters y - ybar; mean="ar1" first fits an AR(1)
    with intercept by least squares and filters its residuals (two-step
    estimation).  The variance recursion is initialized at the sample
    variance of the filtered innovations.
    """
    obs = as_series(y, "y", min_len=50)
    ar_coeff = None
    if mean == "constant":
        mu = float(obs.mean())
        eps = obs - mu
    elif mean == "ar1":
        yy = obs[1:]
        X = np.column_stack([np.ones(obs.shape[0] - 1), obs[:-1]])
        coef = np.linalg.solve(X.T @ X, X.T @ yy)
        mu, ar_coeff = float(coef[0]), float(coef[1])
        eps = yy - X @ coef
    else:
        raise ValueError("mean must be 'constant' or 'ar1'")

    e2 = eps**2
    s2_init = float(e2.mean())
    drive_lag = np.concatenate([[s2_init], e2[:-1]])

    def objective(theta):
        omega, alpha, beta = _unpack(theta)
        drive = omega + alpha * drive_lag
        sigma2, _ = lfilter([1.0], [1.0, -beta], drive,
                            zi=np.array([beta * s2_init]))
        return float(np.sum(np.log(sigma2) + e2 / sigma2))

    theta0 = _pack(s2_init * 0.1, 0.05, 0.85)
    path = [objective(theta0)]
    res = minimize(objective, theta0, method="L-BFGS-B",
                   bounds=[(-40.0, 40.0)] * 3,
                   callback=lambda tk: path.append(objective(tk)),
                   options={"maxiter": 500})
    omega, alpha, beta = _unpack(res.x)
    spec = GarchSpec(omega=omega, alpha=alpha, beta=beta, mu=mu)
    sigma2 = garch_filter(eps, spec, sigma2_0=s2_init, eps2_0=s2_init)
    return GarchFit(spec=spec, loglik=float(res.fun), converged=bool(res.success),
                    n_iter=int(res.nit), objective_path=tuple(path),
                    sigma2=sigma2, nobs=eps.shape[0], ar_coeff=ar_coeff)
