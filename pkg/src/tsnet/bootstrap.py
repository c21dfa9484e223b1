"""Resampling schemes for dependent data.

Block and stationary bootstraps resample the observed path directly;
the sieve bootstrap rebuilds it from an autoregressive fit; the wild
bootstrap reweights residuals in place; the residual-based unit root
bootstrap recolors a random walk from resampled first-difference
residuals.  Every scheme takes a statistic callback and returns the
replicate statistics plus the observed value, so p-values follow one
shared convention: (1 + #{replicates at least as extreme}) / (B + 1).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import ceil
from typing import Callable

import numpy as np
from scipy.signal import lfilter

from ._checks import as_series, check_positive_int
from .series import RngSpec, _resolve_rng

__all__ = [
    "BlockSpec",
    "BootstrapResult",
    "block_bootstrap",
    "stationary_bootstrap",
    "sieve_bootstrap",
    "wild_bootstrap",
    "wild_conditional_variance",
    "residual_unitroot_bootstrap",
    "bootstrap_pvalue",
]


@dataclass(frozen=True)
class BlockSpec:
    """Block resampling layout.

    overlap=True draws block starts uniformly over all positions
    (wrapping around the end when circular=True); overlap=False
    resamples from the deterministic partition into floor(n/length)
    complete blocks, in which case `circular` is ignored.  Replicates
    concatenate ceil(n/length) blocks and truncate to length n.
    """

    length: int
    overlap: bool = True
    circular: bool = True

    def __post_init__(self):
        check_positive_int(self.length, "length")


@dataclass(frozen=True)
class BootstrapResult:
    """Replicate statistics plus the statistic on the original data."""

    stats: np.ndarray
    observed: float | np.ndarray
    B: int
    scheme: str


def _block_index_matrix(n: int, spec: BlockSpec, B: int,
                        gen: np.random.Generator) -> np.ndarray:
    """(B, n) index matrix of block-bootstrap draws into a length-n array."""
    l = spec.length
    if l > n:
        raise ValueError("block length exceeds series length")
    k = ceil(n / l)
    if not spec.overlap:
        n_blocks = n // l
        starts = gen.integers(0, n_blocks, size=(B, k)) * l
    elif spec.circular:
        starts = gen.integers(0, n, size=(B, k))
    else:
        starts = gen.integers(0, n - l + 1, size=(B, k))
    idx = starts[:, :, None] + np.arange(l)[None, None, :]
    if spec.overlap and spec.circular:
        idx %= n
    return idx.reshape(B, -1)[:, :n]


def _stat_stack(stat: Callable, rows: np.ndarray) -> np.ndarray:
    return np.asarray([stat(row) for row in rows])


def block_bootstrap(ts, stat: Callable, B: int, rng,
                    block: BlockSpec | int) -> BootstrapResult:
    """Moving-block bootstrap of a statistic.

    Parameters
    ----------
    stat : callable
        Maps a length-n ndarray to a float (or fixed-shape array).
    block : BlockSpec or int
        An int means BlockSpec(length=int) with overlapping circular
        blocks.
    """
    x = as_series(ts, "ts")
    B = check_positive_int(B, "B")
    spec = block if isinstance(block, BlockSpec) else BlockSpec(int(block))
    gen = _resolve_rng(rng)
    idx = _block_index_matrix(x.shape[0], spec, B, gen)
    return BootstrapResult(stats=_stat_stack(stat, x[idx]), observed=stat(x),
                           B=B, scheme="block")


def stationary_bootstrap(ts, stat: Callable, B: int, rng,
                         mean_block: float) -> BootstrapResult:
    """Stationary bootstrap with geometric block lengths.

    Each position either continues the current block (stepping to the
    next observation, wrapping circularly) or restarts at a fresh
    uniform position with probability 1/mean_block.
    """
    x = as_series(ts, "ts")
    B = check_positive_int(B, "B")
    if not mean_block >= 1:
        raise ValueError("mean_block must be >= 1")
    gen = _resolve_rng(rng)
    n = x.shape[0]
    p = 1.0 / mean_block
    pos = np.arange(n)
    stats = []
    for _ in range(B):
        flags = gen.random(n) < p
        flags[0] = True
        starts = gen.integers(0, n, size=int(flags.sum()))
        seg = np.cumsum(flags) - 1
        last = np.maximum.accumulate(np.where(flags, pos, -1))
        idx = (starts[seg] + (pos - last)) % n
        stats.append(stat(x[idx]))
    return BootstrapResult(stats=np.asarray(stats), observed=stat(x),
                           B=B, scheme="stationary")


def sieve_bootstrap(ts, stat: Callable, B: int, rng, p: int,
                    burn: int | None = None,
                    check_stationary: bool = True) -> BootstrapResult:
    """Autoregressive sieve bootstrap.

    Fits X_t - m = sum_{j<=p} a_j (X_{t-j} - m) + U_t by least squares
    around the sample mean m, recenters the residuals, and rebuilds
    replicate paths by the fitted recursion driven by iid draws from the
    residuals, discarding a burn-in of 100 + p by default.

    An explosive fit raises unless check_stationary=False, in which
    case generation proceeds under a warning.
    """
    x = as_series(ts, "ts", min_len=p + 2)
    B = check_positive_int(B, "B")
    p = check_positive_int(p, "p", minimum=0)
    if p >= x.shape[0] / 2:
        raise ValueError(f"sieve order p={p} too large for n={x.shape[0]}")
    gen = _resolve_rng(rng)
    n = x.shape[0]
    m = x.mean()
    xc = x - m
    if p == 0:
        # iid residual bootstrap around the mean
        a = np.empty(0)
        resid = xc.copy()
    else:
        y = xc[p:]
        lags = np.column_stack([xc[p - j:n - j] for j in range(1, p + 1)])
        a = np.linalg.solve(lags.T @ lags, lags.T @ y)
        companion = np.zeros((p, p))
        companion[0] = a
        if p > 1:
            companion[1:, :-1] = np.eye(p - 1)
        radius = np.max(np.abs(np.linalg.eigvals(companion)))
        if radius >= 1.0:
            if check_stationary:
                raise ValueError(f"fitted sieve is nonstationary "
                                 f"(companion radius {radius:.4f})")
            warnings.warn(f"generating from a nonstationary fitted sieve "
                          f"(companion radius {radius:.4f})")
        resid = y - lags @ a
    resid = resid - resid.mean()
    if burn is None:
        burn = 100 + p
    ar_poly = np.r_[1.0, -a]
    stats = []
    for _ in range(B):
        u = resid[gen.integers(0, resid.shape[0], size=n + burn)]
        path = lfilter([1.0], ar_poly, u)
        stats.append(stat(m + path[burn:]))
    return BootstrapResult(stats=np.asarray(stats), observed=stat(x),
                           B=B, scheme="sieve")


def wild_bootstrap(residuals, stat: Callable, B: int, rng,
                   multiplier: str = "normal") -> BootstrapResult:
    """Wild bootstrap: y*_t = e_t eta*_t with iid mean-0 variance-1 eta*.

    multiplier is "normal" or "rademacher".
    """
    e = as_series(residuals, "residuals")
    B = check_positive_int(B, "B")
    gen = _resolve_rng(rng)
    n = e.shape[0]
    if multiplier == "normal":
        eta = gen.standard_normal((B, n))
    elif multiplier == "rademacher":
        eta = gen.integers(0, 2, size=(B, n)) * 2.0 - 1.0
    else:
        raise ValueError("multiplier must be 'normal' or 'rademacher'")
    return BootstrapResult(stats=_stat_stack(stat, e[None, :] * eta),
                           observed=stat(e), B=B, scheme="wild")


def wild_conditional_variance(residuals) -> float:
    """Conditional variance of n^{-1/2} sum_t y*_t given the data.

    For any mean-0 variance-1 multiplier this equals n^{-1} sum e_t^2
    exactly.
    """
    e = as_series(residuals, "residuals")
    return float(np.mean(e**2))


def residual_unitroot_bootstrap(ts, B: int, rng,
                                block: BlockSpec | int) -> BootstrapResult:
    """Unit root bootstrap from recolored difference residuals.

    Fits x_t = rho x_{t-1} + u_t without deterministics, recenters the
    residuals, block-resamples them, and rebuilds replicate random walks
    x*_t = x*_{t-1} + u*_t from x*_0 = 0.  The statistic is the
    normalized bias T(rho* - 1) with T = n - 1, matching the convention
    of the Dickey-Fuller limit tables.
    """
    x = as_series(ts, "ts", min_len=8)
    B = check_positive_int(B, "B")
    spec = block if isinstance(block, BlockSpec) else BlockSpec(int(block))
    gen = _resolve_rng(rng)
    y = x[1:]
    ylag = x[:-1]
    m = y.shape[0]
    rho_hat = float((ylag @ y) / (ylag @ ylag))
    resid = y - rho_hat * ylag
    resid = resid - resid.mean()
    # an exact AR(1) path leaves nothing to resample
    if float(resid @ resid) <= 1e-20 * max(1.0, float(x @ x)):
        raise ValueError("difference residuals are numerically zero; "
                         "the resampling distribution is degenerate")
    idx = _block_index_matrix(m, spec, B, gen)
    u_star = resid[idx]
    x_star = np.hstack([np.zeros((B, 1)), np.cumsum(u_star, axis=1)])
    ys = x_star[:, 1:]
    yl = x_star[:, :-1]
    rho_star = np.sum(yl * ys, axis=1) / np.sum(yl**2, axis=1)
    stats = m * (rho_star - 1.0)
    observed = m * (rho_hat - 1.0)
    return BootstrapResult(stats=stats, observed=observed, B=B,
                           scheme="residual-unitroot")


def bootstrap_pvalue(observed: float, draws, tail: str = "two") -> float:
    """Finite-sample bootstrap p-value (1 + #extreme) / (B + 1)."""
    d = np.asarray(draws, dtype=float)
    if tail == "left":
        extreme = np.sum(d <= observed)
    elif tail == "right":
        extreme = np.sum(d >= observed)
    elif tail == "two":
        extreme = np.sum(np.abs(d) >= abs(observed))
    else:
        raise ValueError("tail must be 'left', 'right', or 'two'")
    return float((1 + extreme) / (d.size + 1))
