"""Data-generating processes and the reproducibility contract.

Every stochastic routine in the package draws through an `RngSpec`: a
(seed, stream) pair mapped onto a counter-based Philox generator, so that
the pair fully determines the output and replication r of an experiment
can use stream `base + r` without any cross-stream correlation concerns.

Series are returned as plain 1-d float ndarrays; multivariate series as
(n, d) arrays with time in rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from ._checks import as_series, check_positive_int

__all__ = [
    "RngSpec",
    "LinearProcessSpec",
    "LurSpec",
    "SystemSpec",
    "simulate_linear_process",
    "long_run_variance_true",
    "autocovariance_true",
    "simulate_lur_ar",
    "simulate_predictive_system",
    "simulate_ou_exact",
    "partial_sum_process",
]

_UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class RngSpec:
    """Seed/stream pair identifying one reproducible random stream.

    Both fields are unsigned 64-bit integers.  The pair keys a Philox
    counter-based generator, so streams with different (seed, stream)
    are statistically independent and the mapping is stable across runs,
    platforms, and degrees of parallelism.
    """

    seed: int
    stream: int = 0

    def __post_init__(self):
        for name, v in (("seed", self.seed), ("stream", self.stream)):
            if not isinstance(v, (int, np.integer)) or not 0 <= int(v) <= _UINT64_MAX:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {v!r}")

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed, self.stream], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def substream(self, offset: int) -> "RngSpec":
        """Stream for replication `offset` relative to this spec."""
        return RngSpec(self.seed, (self.stream + offset) % (_UINT64_MAX + 1))


def _resolve_rng(rng) -> np.random.Generator:
    if isinstance(rng, RngSpec):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError("rng must be an RngSpec or numpy Generator")


@dataclass(frozen=True)
class LinearProcessSpec:
    """Finite-order linear process X_t = sum_j coeffs[j] * eps_{t-j}.

    `coeffs` holds (c_0, ..., c_q); innovations are iid N(0, sigma^2).
    """

    coeffs: tuple[float, ...]
    sigma: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if len(self.coeffs) == 0:
            raise ValueError("coeffs must be non-empty")
        if not all(np.isfinite(self.coeffs)):
            raise ValueError("coeffs must be finite")
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError("sigma must be positive")


def simulate_linear_process(spec: LinearProcessSpec, n: int, rng) -> np.ndarray:
    """Draw n observations of the moving average defined by `spec`.

    The presample innovations eps_{1-q}, ..., eps_0 are drawn too, so the
    output is exactly stationary from the first observation.
    """
    n = check_positive_int(n, "n")
    gen = _resolve_rng(rng)
    q = len(spec.coeffs) - 1
    eps = gen.standard_normal(n + q) * spec.sigma
    x = lfilter(np.asarray(spec.coeffs), [1.0], eps)
    return x[q:]


def long_run_variance_true(spec: LinearProcessSpec) -> float:
    """Population long-run variance omega^2 = sigma^2 (sum_j c_j)^2."""
    return float(spec.sigma**2 * np.sum(spec.coeffs) ** 2)


def autocovariance_true(spec: LinearProcessSpec, h: int) -> float:
    """Population autocovariance gamma(h) = sigma^2 sum_j c_j c_{j+|h|}."""
    h = abs(int(h))
    c = np.asarray(spec.coeffs)
    if h >= c.size:
        return 0.0
    return float(spec.sigma**2 * np.dot(c[: c.size - h], c[h:]))


@dataclass(frozen=True)
class LurSpec:
    """Autoregressive root local to unity: rho_n = 1 + c / n^gamma.

    c < 0 gives the near-stationary side, c > 0 the mildly explosive
    side, and gamma in (0, 1) the mildly integrated range.  gamma = 1
    with c = 0 is an exact unit root.
    """

    c: float
    gamma: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.c):
            raise ValueError("c must be finite")
        if not (0 < self.gamma <= 1):
            raise ValueError("gamma must lie in (0, 1]")

    def rho(self, n: int) -> float:
        return 1.0 + self.c / float(n) ** self.gamma


def simulate_lur_ar(spec: LurSpec, n: int, rng=None, innovations=None,
                    x0: float = 0.0) -> np.ndarray:
    """Simulate x_t = rho_n x_{t-1} + v_t, t = 1..n, from x_0 = x0.

    Parameters
    ----------
    spec : LurSpec
        Persistence parametrization; rho_n is evaluated at this n.
    innovations : None, ndarray, or LinearProcessSpec
        None draws iid standard normal v_t; an array of length n is used
        as-is; a LinearProcessSpec is simulated first (stationary errors
        with presample).
    """
    n = check_positive_int(n, "n")
    if innovations is None:
        v = _resolve_rng(rng).standard_normal(n)
    elif isinstance(innovations, LinearProcessSpec):
        v = simulate_linear_process(innovations, n, rng)
    else:
        v = as_series(innovations, "innovations")
        if v.shape[0] != n:
            raise ValueError(f"innovations must have length n={n}, got {v.shape[0]}")
    rho = spec.rho(n)
    x, _ = lfilter([1.0], [1.0, -rho], v, zi=np.array([rho * x0]))
    return x


@dataclass(frozen=True)
class SystemSpec:
    """Predictive system y_t = intercept + beta' x_{t-1} + u_t.

    The d regressors follow x_t = R_n x_{t-1} + v_t with diagonal R_n
    from per-column LurSpecs and x_0 = 0.  The base innovations
    (u_t, e_t) are jointly Gaussian with covariance `sigma_ue` (first
    row/column is the y error).  If `v_ar` is given, the regressor
    innovations are AR(1)-filtered: v_t = diag(v_ar) v_{t-1} + e_t.
    """

    beta: tuple[float, ...]
    lur: tuple[LurSpec, ...]
    intercept: float = 0.0
    sigma_ue: tuple[tuple[float, ...], ...] | None = None
    v_ar: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(float(b) for b in self.beta))
        d = len(self.beta)
        if d == 0:
            raise ValueError("beta must be non-empty")
        if len(self.lur) != d:
            raise ValueError("need one LurSpec per regressor")
        if self.sigma_ue is not None:
            sig = np.asarray(self.sigma_ue, dtype=float)
            if sig.shape != (d + 1, d + 1):
                raise ValueError(f"sigma_ue must be ({d + 1}, {d + 1})")
            if not np.allclose(sig, sig.T):
                raise ValueError("sigma_ue must be symmetric")
            object.__setattr__(self, "sigma_ue", tuple(tuple(row) for row in sig))
        if self.v_ar is not None:
            var = tuple(float(a) for a in self.v_ar)
            if len(var) != d:
                raise ValueError("need one v_ar coefficient per regressor")
            if any(abs(a) >= 1 for a in var):
                raise ValueError("v_ar coefficients must be inside the unit circle")
            object.__setattr__(self, "v_ar", var)

    @property
    def dim(self) -> int:
        return len(self.beta)


def simulate_predictive_system(spec: SystemSpec, n: int, rng):
    """Simulate (y, x) of length n from a SystemSpec.

    Returns
    -------
    y : ndarray, shape (n,)
    x : ndarray, shape (n, d)
        x[t] is x_{t+1} in model time; regressions of y_t on x_{t-1}
        should pair y[1:] with x[:-1].
    """
    n = check_positive_int(n, "n", minimum=2)
    gen = _resolve_rng(rng)
    d = spec.dim
    if spec.sigma_ue is None:
        sig = np.eye(d + 1)
    else:
        sig = np.asarray(spec.sigma_ue)
    chol = np.linalg.cholesky(sig)
    shocks = gen.standard_normal((n, d + 1)) @ chol.T
    u = shocks[:, 0]
    e = shocks[:, 1:]

    if spec.v_ar is not None:
        v = np.empty_like(e)
        for i, a in enumerate(spec.v_ar):
            v[:, i], _ = lfilter([1.0], [1.0, -a], e[:, i], zi=np.array([0.0]))
    else:
        v = e

    x = np.empty((n, d))
    for i, lur in enumerate(spec.lur):
        rho = lur.rho(n)
        x[:, i], _ = lfilter([1.0], [1.0, -rho], v[:, i], zi=np.array([0.0]))

    xlag = np.vstack([np.zeros(d), x[:-1]])
    y = spec.intercept + xlag @ np.asarray(spec.beta) + u
    return y, x


def simulate_ou_exact(c: float, sigma: float, n: int, rng, horizon: float = 1.0,
                      init: str = "zero") -> np.ndarray:
    """Sample an Ornstein-Uhlenbeck path dJ = c J dr + sigma dW exactly.

    The path is returned at the n grid points r_i = i * horizon / n,
    simulated through the exact Gaussian transition density, so there is
    no discretization bias at any step size.

    Parameters
    ----------
    init : {"zero", "stationary"}
        "zero" starts from J(0) = 0 (the stochastic-integral form
        int_0^r e^{(r-s)c} dW).  "stationary" draws J(0) from the
        stationary law N(0, sigma^2 / (-2c)); requires c < 0.
    """
    n = check_positive_int(n, "n")
    if not (np.isfinite(c) and np.isfinite(sigma) and sigma >= 0 and horizon > 0):
        raise ValueError("need finite c, sigma >= 0, horizon > 0")
    gen = _resolve_rng(rng)
    dt = horizon / n
    if c == 0.0:
        step_sd = sigma * np.sqrt(dt)
        phi = 1.0
    else:
        phi = np.exp(c * dt)
        step_sd = sigma * np.sqrt((np.expm1(2 * c * dt)) / (2 * c))
    if init == "zero":
        j0 = 0.0
    elif init == "stationary":
        if c >= 0:
            raise ValueError("stationary initialization requires c < 0")
        j0 = gen.standard_normal() * sigma / np.sqrt(-2 * c)
    else:
        raise ValueError("init must be 'zero' or 'stationary'")
    shocks = gen.standard_normal(n) * step_sd
    path, _ = lfilter([1.0], [1.0, -phi], shocks, zi=np.array([phi * j0]))
    return path


def partial_sum_process(ts, r) -> float | np.ndarray:
    """Scaled partial-sum functional X_n(r) = n^{-1/2} sum_{t<=floor(rn)} X_t.

    `r` may be a scalar in [0, 1] or an array of such; floor(rn) = 0
    gives 0 by the empty-sum convention.
    """
    x = as_series(ts, "ts")
    n = x.shape[0]
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0) or np.any(r_arr > 1):
        raise ValueError("r must lie in [0, 1]")
    csum = np.concatenate([[0.0], np.cumsum(x)])
    idx = np.floor(r_arr * n + 1e-12).astype(int)
    out = csum[idx] / np.sqrt(n)
    return float(out) if np.isscalar(r) or r_arr.ndim == 0 else out
