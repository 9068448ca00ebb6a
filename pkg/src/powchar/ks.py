"""Kolmogorov-Smirnov statistics with asymptotic critical values."""

from __future__ import annotations

import math

import numpy as np


def ks_coefficient(level: float) -> float:
    """Asymptotic Kolmogorov quantile ``c`` with ``P(K > c) ~= level``.

    ``c(0.05) = 1.358``, ``c(0.01) = 1.628``.
    """
    if not 0 < level < 1:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    return math.sqrt(-0.5 * math.log(0.5 * level))


def ks_2samp_critical(level: float, n1: int, n2: int) -> float:
    return ks_coefficient(level) * math.sqrt((n1 + n2) / (n1 * n2))


def ks_1samp_critical(level: float, n: int) -> float:
    return ks_coefficient(level) / math.sqrt(n)


def ks_2samp(a, b):
    """Two-sample statistic ``sup |A(x) - B(x)|`` and its location.

    Both empirical cdfs are right-continuous step functions evaluated on the
    pooled sorted sample, so tied values are handled correctly.

    Returns ``(statistic, x_at_max, A(x_at_max), B(x_at_max))``.
    """
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    pooled = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, pooled, side="right") / a.size
    cdf_b = np.searchsorted(b, pooled, side="right") / b.size
    diff = np.abs(cdf_a - cdf_b)
    i = int(np.argmax(diff))
    return float(diff[i]), float(pooled[i]), float(cdf_a[i]), float(cdf_b[i])


def ks_1samp(sample, cdf) -> float:
    """One-sample statistic ``sup |F_n(x) - F(x)|`` against a vectorized cdf."""
    x = np.sort(np.asarray(sample, dtype=float))
    n = x.size
    F = np.asarray(cdf(x), dtype=float)
    upper = np.arange(1, n + 1) / n - F
    lower = F - np.arange(n) / n
    return float(max(upper.max(), lower.max()))
