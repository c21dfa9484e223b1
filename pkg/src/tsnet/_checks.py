"""Input validation helpers shared across the package.

Series are plain one-dimensional float ndarrays, multivariate series are
(n, d) float ndarrays with observations in rows.  Everything user-facing
funnels through these coercions so downstream code can assume clean input.
"""

from __future__ import annotations

import numpy as np

__all__ = ["as_series", "as_matrix", "check_positive_int", "check_in"]


def as_series(x, name: str = "x", min_len: int = 1) -> np.ndarray:
    """Coerce to a finite 1-d float array of length >= min_len."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.shape[0] < min_len:
        raise ValueError(f"{name} needs at least {min_len} observations, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def as_matrix(x, name: str = "x", min_len: int = 1) -> np.ndarray:
    """Coerce to a finite (n, d) float array; 1-d input becomes a single column."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ValueError(f"{name} must be at most two-dimensional, got shape {arr.shape}")
    if arr.shape[0] < min_len:
        raise ValueError(f"{name} needs at least {min_len} rows, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    v = int(value)
    if v != value or v < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return v


def check_in(value, choices, name: str):
    if value not in choices:
        raise ValueError(f"{name} must be one of {sorted(choices)}, got {value!r}")
    return value
