"""Simulated quantile tables for nonstandard limit distributions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["QuantileTable", "DEFAULT_PROBS"]

# Tail and central probabilities reported by the limit simulators.
DEFAULT_PROBS = (0.01, 0.025, 0.05, 0.10, 0.50, 0.90, 0.95, 0.99)


@dataclass(frozen=True)
class QuantileTable:
    """Empirical quantiles of a simulated limit distribution.

    Parameters
    ----------
    probs : tuple of float
        Probability levels, strictly increasing, in (0, 1).
    values : tuple of float
        Quantile at each probability level.
    reps : int
        Number of Monte Carlo replications behind the table.
    detail : str
        Short description of the statistic and settings simulated.
    """

    probs: tuple[float, ...]
    values: tuple[float, ...]
    reps: int
    detail: str = ""

    def __post_init__(self):
        if len(self.probs) != len(self.values):
            raise ValueError("probs and values must have equal length")
        p = np.asarray(self.probs)
        if p.size == 0 or np.any(p <= 0) or np.any(p >= 1) or np.any(np.diff(p) <= 0):
            raise ValueError("probs must be strictly increasing within (0, 1)")

    def quantile(self, prob: float) -> float:
        """Return the tabulated quantile at `prob` (must be an exact level)."""
        for p, v in zip(self.probs, self.values):
            if abs(p - prob) < 1e-12:
                return v
        raise KeyError(f"probability {prob} not tabulated; available: {self.probs}")

    @classmethod
    def from_draws(cls, draws, reps: int | None = None, probs=DEFAULT_PROBS,
                   detail: str = "") -> "QuantileTable":
        draws = np.asarray(draws, dtype=float)
        vals = np.quantile(draws, np.asarray(probs))
        return cls(probs=tuple(float(p) for p in probs),
                   values=tuple(float(v) for v in vals),
                   reps=int(reps if reps is not None else draws.size),
                   detail=detail)
