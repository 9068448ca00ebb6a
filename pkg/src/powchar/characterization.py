"""Executable tests of the product identity ``X_{k:n} =d Y_{k:n-1} Z_{n:n}``.

The identity holds for every power base Pow(alpha) and only for those, so a
numeric sup distance, a Monte Carlo two-sample KS test and a data-driven
goodness-of-fit test all answer "is F a power function law?".
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .distributions import ContinuousDistribution
from .errors import DomainError, InsufficientDataError
from .ks import ks_2samp, ks_2samp_critical
from .order_stats import OrderStatisticLaw, os_cdf, sample_os
from .product import DEFAULT_QUAD, _require_pair, _require_unit_base, interior_grid, product_cdf
from .quadrature import QuadratureConfig
from .rng import GENERATOR_VERSION, McConfig, generator

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
NUMERIC_FLOOR = 1e-6
MIN_MC_REPLICATES = 100
MIN_GOF_BLOCKS = 100
GOF_SUBSTREAM = 0


@dataclass
class IdentityReport:
    k: int
    n: int
    method: str
    sup_distance: float
    verdict: str
    threshold: float
    ks_statistic: float | None = None
    ks_critical: float | None = None
    level: float | None = None
    diagnostics: list[tuple[float, float, float]] = field(default_factory=list)
    settings: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return self.verdict == CONSISTENT

    def to_dict(self) -> dict:
        d = asdict(self)
        d["diagnostics"] = [list(t) for t in self.diagnostics]
        return d


def verify_identity_numeric(base: ContinuousDistribution, k: int, n: int, grid_size: int = 101,
                            q: QuadratureConfig = DEFAULT_QUAD, n_diagnostics: int = 5) -> IdentityReport:
    """Sup distance between ``F_{k:n}`` and the product cdf over an interior grid.

    Consistent iff the distance is at most ``max(1e-6, 100 * q.abs_tol)``.
    """
    _require_pair(k, n)
    _require_unit_base(base)
    if grid_size < 16:
        raise DomainError("grid_size must be >= 16")
    xs = interior_grid(grid_size)
    lhs = np.asarray(os_cdf(OrderStatisticLaw(k, n, base), xs))
    rhs = np.asarray(product_cdf(k, n, base, xs, q))
    gap = np.abs(lhs - rhs)
    threshold = max(NUMERIC_FLOOR, 100.0 * q.abs_tol)
    worst = np.argsort(gap)[::-1][:n_diagnostics]
    sup = float(gap.max())
    return IdentityReport(
        k=k, n=n, method="numeric", sup_distance=sup,
        verdict=CONSISTENT if sup <= threshold else INCONSISTENT,
        threshold=threshold,
        diagnostics=[(float(xs[i]), float(lhs[i]), float(rhs[i])) for i in worst],
        settings={"base": base.name, "grid_size": grid_size, "abs_tol": q.abs_tol,
                  "max_depth": q.max_depth},
    )


def _ks_report(lhs, rhs, k, n, method, level, settings):
    stat, x, a, b = ks_2samp(lhs, rhs)
    crit = ks_2samp_critical(level, lhs.size, rhs.size)
    return IdentityReport(
        k=k, n=n, method=method, sup_distance=stat,
        verdict=CONSISTENT if stat <= crit else INCONSISTENT,
        threshold=crit, ks_statistic=stat, ks_critical=crit, level=level,
        diagnostics=[(x, a, b)], settings=settings,
    )


def _mc_settings(base, cfg):
    return {"base": base.name, "replicates": cfg.n, "seed": cfg.seed, "stream": cfg.stream,
            "generator": GENERATOR_VERSION}


def verify_identity_mc(base: ContinuousDistribution, k: int, n: int, cfg: McConfig,
                       level: float = 0.05) -> IdentityReport:
    """Two-sample KS between sampled ``X_{k:n}`` and sampled ``Y_{k:n-1} Z_{n:n}``.

    The three samples come from sub-streams 0, 1 and 2 of ``cfg``.
    """
    _require_pair(k, n)
    if cfg.n < MIN_MC_REPLICATES:
        raise DomainError(f"need at least {MIN_MC_REPLICATES} replicates")
    x = sample_os(OrderStatisticLaw(k, n, base), cfg, 0)
    y = sample_os(OrderStatisticLaw(k, n - 1, base), cfg, 1)
    z = sample_os(OrderStatisticLaw(n, n, base), cfg, 2)
    return _ks_report(x, y * z, k, n, "mc", level, _mc_settings(base, cfg))


def sample_maxima_chain(base: ContinuousDistribution, k: int, n: int, cfg: McConfig) -> np.ndarray:
    """``cfg.n`` draws of ``prod_{i=k}^{n} X_[i:i]``; factor i uses sub-stream ``(1, i)``."""
    out = np.ones(cfg.n)
    for i in range(k, n + 1):
        out *= sample_os(OrderStatisticLaw(i, i, base), cfg, 1, i)
    return out


def verify_maxima_chain(base: ContinuousDistribution, k: int, n: int, cfg: McConfig,
                        level: float = 0.05) -> IdentityReport:
    """Two-sample KS between ``X_{k:n}`` and the product of maxima of sizes k..n."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    if cfg.n < MIN_MC_REPLICATES:
        raise DomainError(f"need at least {MIN_MC_REPLICATES} replicates")
    x = sample_os(OrderStatisticLaw(k, n, base), cfg, 0)
    chain = sample_maxima_chain(base, k, n, cfg)
    return _ks_report(x, chain, k, n, "chain", level, _mc_settings(base, cfg))


def _check_unit_sample(sample) -> np.ndarray:
    x = np.asarray(sample, dtype=float).ravel()
    if x.size == 0:
        raise InsufficientDataError("empty sample")
    bad = np.flatnonzero(~((x > 0) & (x < 1)))
    if bad.size:
        raise DomainError(f"sample value {x[bad[0]]!r} at index {bad[0]} outside (0, 1)")
    return x


def estimate_alpha(sample) -> float:
    """Maximum likelihood estimate ``N / sum(-log x_i)`` of the Pow shape."""
    x = _check_unit_sample(sample)
    return float(x.size / -np.log(x).sum())


def gof_blocks(sample, k: int, n: int, cfg: McConfig | None = None):
    """Split a sample into disjoint block triples of sizes n, n-1, n.

    Returns ``(x_kn, y_kn1 * z_nn)``: one value of each side per triple. With a
    ``cfg`` the sample is first permuted on sub-stream 0 (so file order does
    not matter) and at most ``cfg.n`` triples are used.
    """
    _require_pair(k, n)
    x = _check_unit_sample(sample)
    width = 3 * n - 1
    blocks = x.size // width
    if cfg is not None:
        x = x[generator(cfg, GOF_SUBSTREAM).permutation(x.size)]
        blocks = min(blocks, cfg.n)
    if blocks < MIN_GOF_BLOCKS:
        raise InsufficientDataError(
            f"{x.size} values give {blocks} blocks of {width}; need at least {MIN_GOF_BLOCKS}")
    rows = x[: blocks * width].reshape(blocks, width)
    lhs = np.sort(rows[:, :n], axis=1)[:, k - 1]
    y = np.sort(rows[:, n:2 * n - 1], axis=1)[:, k - 1]
    z = rows[:, 2 * n - 1:].max(axis=1)
    return lhs, y * z


def power_gof(sample, k: int, n: int, cfg: McConfig | None = None, level: float = 0.05) -> IdentityReport:
    """Test whether ``sample`` is compatible with some Pow(alpha).

    Each disjoint triple of blocks yields one ``X_{k:n}`` and one
    ``Y_{k:n-1} Z_{n:n}``; the two derived samples are compared by two-sample
    KS. No shape parameter is estimated, and since every step commutes with
    ``x -> x**c`` the verdict is invariant under that map.
    """
    lhs, rhs = gof_blocks(sample, k, n, cfg)
    settings = {"sample_size": int(np.size(sample)), "blocks": int(lhs.size)}
    if cfg is not None:
        settings.update(seed=cfg.seed, stream=cfg.stream, generator=GENERATOR_VERSION)
    return _ks_report(lhs, rhs, k, n, "gof", level, settings)
