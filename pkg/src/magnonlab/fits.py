"""Least-squares fits for size-scaling data: straight lines and log-log slopes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np


@dataclass(frozen=True)
class ScalingSeries:
    """Ordered (N, value) pairs for one state family."""

    ns: Tuple[int, ...]
    values: Tuple[float, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "ns", tuple(int(n) for n in self.ns))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.ns) != len(self.values):
            raise ValueError("ns and values length mismatch")
        if any(b <= a for a, b in zip(self.ns, self.ns[1:])):
            raise ValueError("N values must be strictly increasing")

    def __len__(self):
        return len(self.ns)


@dataclass(frozen=True)
class FitResult:
    """Slope/intercept of an ordinary least-squares line with standard errors.

    Errors follow the residual-variance convention: sigma^2 is estimated
    from the residual sum of squares with n-2 degrees of freedom.
    """

    slope: float
    intercept: float
    slope_stderr: float
    intercept_stderr: float
    residual_norm: float
    n_points: int


def _ols(x: np.ndarray, y: np.ndarray) -> FitResult:
    n = x.size
    if n < 3:
        raise ValueError(f"need at least 3 points, got {n}")
    sxx = float(np.sum((x - x.mean()) ** 2))
    if sxx == 0.0:
        raise ValueError("degenerate abscissa: all x values equal")
    slope = float(np.sum((x - x.mean()) * (y - y.mean())) / sxx)
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (slope * x + intercept)
    rss = float(np.sum(resid ** 2))
    sigma2 = rss / (n - 2)
    return FitResult(
        slope=slope,
        intercept=intercept,
        slope_stderr=float(np.sqrt(sigma2 / sxx)),
        intercept_stderr=float(np.sqrt(sigma2 * (1.0 / n + x.mean() ** 2 / sxx))),
        residual_norm=float(np.sqrt(rss)),
        n_points=n,
    )


def linear_fit(series: ScalingSeries) -> FitResult:
    """Fit value = slope*N + intercept by unweighted least squares."""
    return _ols(np.asarray(series.ns, dtype=float),
                np.asarray(series.values, dtype=float))


def loglog_fit(series: ScalingSeries) -> FitResult:
    """Fit log(value) = slope*log(N) + intercept; slope is the scaling exponent."""
    values = np.asarray(series.values, dtype=float)
    if np.any(values <= 0.0):
        raise ValueError("log-log fit needs strictly positive values")
    return _ols(np.log(np.asarray(series.ns, dtype=float)), np.log(values))
