"""Power-law fits on positive time series.

A series v(t), t = 1..n, is fitted as log v = intercept + slope * log t
by ordinary least squares after discarding an initial transient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NumericalDomainError


@dataclass(frozen=True)
class PowerLawFit:
    slope: float
    intercept: float
    stderr: float
    ci95: tuple[float, float]
    points_used: int
    points_dropped: int


def fit_power_law(values, drop_first: int = 0) -> PowerLawFit:
    """Least-squares slope of log(values) against log(t).

    values[i] is the sample at t = i + 1. The first drop_first points
    are excluded; at least 3 must remain. Nonpositive or nonfinite
    values in the fitted range are a numerical-domain error.
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    n = v.size
    if drop_first < 0:
        raise ConfigError(f"drop_first must be >= 0, got {drop_first}")
    m = n - drop_first
    if m < 3:
        raise ConfigError(
            f"need at least 3 points after dropping {drop_first}, series has {n}"
        )
    y = v[drop_first:]
    if not np.all(np.isfinite(y)) or np.any(y <= 0.0):
        raise NumericalDomainError("fitted range must be positive and finite")
    t = np.arange(drop_first + 1, n + 1, dtype=np.float64)
    x = np.log(t)
    ly = np.log(y)
    xm = float(x.mean())
    dx = x - xm
    sxx = float(dx @ dx)
    slope = float(dx @ (ly - ly.mean())) / sxx
    intercept = float(ly.mean()) - slope * xm
    resid = ly - (intercept + slope * x)
    s2 = float(resid @ resid) / (m - 2)
    stderr = math.sqrt(s2 / sxx)
    return PowerLawFit(
        slope=slope,
        intercept=intercept,
        stderr=stderr,
        ci95=(slope - 1.96 * stderr, slope + 1.96 * stderr),
        points_used=m,
        points_dropped=drop_first,
    )
