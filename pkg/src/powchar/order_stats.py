"""Ordinary order statistics and the generalized-order-statistics joint density."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sps

from .distributions import ContinuousDistribution
from .errors import DomainError
from .rng import McConfig, uniforms
from .special import betainc, log_binom

MAX_N = 10**6
_ONE_MINUS = np.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class OrderStatisticLaw:
    """Law of ``X_{k:n}``, the k-th smallest of n iid draws from ``base``."""

    k: int
    n: int
    base: ContinuousDistribution

    def __post_init__(self):
        if not (1 <= self.k <= self.n <= MAX_N):
            raise DomainError(f"need 1 <= k <= n <= {MAX_N}, got k={self.k}, n={self.n}")

    @property
    def log_coef(self) -> float:
        """``log( n! / ((k-1)! (n-k)!) )``."""
        return math.log(self.n) + log_binom(self.n - 1, self.k - 1)


def beta_cdf_rank(k: int, n: int, p):
    """``I_p(k, n - k + 1)``: probability that the k-th of n uniforms is <= p."""
    p = np.asarray(p, dtype=float)
    if k == n:
        out = p ** n
    elif k == 1:
        with np.errstate(divide="ignore"):
            out = -np.expm1(n * np.log1p(-p))
    else:
        out = betainc(k, n - k + 1, p)
    return float(out) if np.ndim(out) == 0 else out


def os_cdf(law: OrderStatisticLaw, x):
    """``P(X_{k:n} <= x)`` evaluated as ``I_{F(x)}(k, n - k + 1)``."""
    xa = np.asarray(x, dtype=float)
    base = law.base
    if np.any(~((xa >= base.left) & (xa <= base.right))):
        raise DomainError(f"os_cdf argument outside the closed support {base.support}")
    return beta_cdf_rank(law.k, law.n, base.cdf(xa))


def os_pdf(law: OrderStatisticLaw, x):
    """Density ``n!/((k-1)!(n-k)!) F^{k-1} (1-F)^{n-k} f`` on the open support."""
    f = np.asarray(law.base.pdf(x), dtype=float)
    F = np.asarray(law.base.cdf(x), dtype=float)
    k, n = law.k, law.n
    log_w = law.log_coef + sps.xlogy(k - 1, F) + sps.xlog1py(n - k, -F)
    out = np.exp(log_w) * f
    return float(out) if np.ndim(out) == 0 else out


def beta_rank_quantile(k: int, n: int, u: np.ndarray) -> np.ndarray:
    """Quantile of Beta(k, n - k + 1), clipped into the open unit interval."""
    if k == n:
        b = u ** (1.0 / n)
    elif k == 1:
        b = -np.expm1(np.log1p(-u) / n)
    else:
        b = sps.betaincinv(k, n - k + 1, u)
    return np.clip(b, np.finfo(float).tiny, _ONE_MINUS)


def sample_os(law: OrderStatisticLaw, cfg: McConfig, *sub: int) -> np.ndarray:
    """``cfg.n`` iid replicates of ``X_{k:n}``.

    Each replicate is ``quantile(B)`` with ``B`` the Beta(k, n-k+1) quantile of
    one open uniform from the stream, so the cost does not grow with ``n``.
    """
    u = uniforms(cfg, *sub)
    return np.asarray(law.base.quantile(beta_rank_quantile(law.k, law.n, u)), dtype=float)


@dataclass(frozen=True)
class GosParams:
    """Generalized order statistics with a common ``m_i = m``.

    ``gammas[i-1] = k_gos + n - i + M_i`` with ``M_i = (n - i) m``.
    """

    n: int
    m: float = 0.0
    k_gos: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("GOS sample size must be >= 1")
        if not self.k_gos > 0:
            raise DomainError("GOS parameter k must be positive")
        if np.any(self.gammas <= 0):
            raise DomainError(f"GOS parameters give a non-positive gamma: {self.gammas}")

    @property
    def gammas(self) -> np.ndarray:
        i = np.arange(1, self.n, dtype=float)
        return self.k_gos + self.n - i + (self.n - i) * self.m


def gos_joint_density(p: GosParams, base: ContinuousDistribution, xs) -> float:
    xs = np.asarray(xs, dtype=float)
    if xs.shape != (p.n,):
        raise DomainError(f"expected {p.n} ordered points, got shape {xs.shape}")
    if np.any(np.diff(xs) <= 0):
        raise DomainError("GOS points must be strictly increasing")
    f = np.asarray(base.pdf(xs), dtype=float)
    surv = 1.0 - np.asarray(base.cdf(xs), dtype=float)
    log_val = (
        math.log(p.k_gos)
        + np.log(p.gammas).sum()
        + sps.xlogy(p.m, surv[:-1]).sum()
        + sps.xlogy(p.k_gos - 1.0, surv[-1])
    )
    return float(np.exp(log_val) * np.prod(f))
