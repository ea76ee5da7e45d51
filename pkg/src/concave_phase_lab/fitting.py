"""Least-squares power-law fitting for scaling ladders."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["LogLogFit", "fit_loglog"]


@dataclass(frozen=True)
class LogLogFit:
    """Power-law fit y ~ C * x^slope from least squares on the logs."""

    slope: float
    intercept: float
    r_squared: float


def fit_loglog(x, y) -> LogLogFit:
    """Fit log y = slope*log x + intercept; needs positive data, >= 2 points."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or len(x) < 2:
        raise ValueError("need two equal-length 1-d arrays with >= 2 points")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("log-log fit needs strictly positive data")
    lx, ly = np.log(x), np.log(y)
    design = np.stack([lx, np.ones_like(lx)], axis=1)
    coef, *_ = np.linalg.lstsq(design, ly, rcond=None)
    residual = ly - design @ coef
    total = ly - ly.mean()
    ss_tot = float(total @ total)
    r2 = 1.0 - float(residual @ residual) / ss_tot if ss_tot > 0 else 1.0
    return LogLogFit(slope=float(coef[0]), intercept=float(coef[1]), r_squared=r2)
