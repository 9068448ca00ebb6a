"""Ranked set sampling designs.

Row ``i`` of a scheme draws a fresh set of ``set_sizes[i]`` units, ranks them
and records the unit of rank ``selected_ranks[i]``. The standard (balanced)
scheme uses n rows of set size n with ranks 1..n; the maxima scheme has row i
of set size i recording its maximum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import ContinuousDistribution
from .errors import DomainError
from .order_stats import OrderStatisticLaw, sample_os
from .rng import McConfig, uniforms

KINDS = ("standard", "maxima", "custom")


@dataclass(frozen=True)
class RssScheme:
    kind: str
    n: int
    selected_ranks: tuple[int, ...]
    set_sizes: tuple[int, ...]
    cycles: int = 1
    literal: bool = False  # draw-and-sort every set instead of the beta transform

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown scheme kind {self.kind!r}")
        if self.cycles < 1:
            raise DomainError("cycles must be >= 1")
        if len(self.selected_ranks) != self.n or len(self.set_sizes) != self.n:
            raise DomainError("need one rank and one set size per row")
        for r, s in zip(self.selected_ranks, self.set_sizes):
            if not 1 <= r <= s:
                raise DomainError(f"rank {r} invalid for set size {s}")
        rows = range(1, self.n + 1)
        if self.kind == "standard" and (self.selected_ranks != tuple(rows)
                                        or set(self.set_sizes) != {self.n}):
            raise DomainError("standard scheme must select rank i from sets of size n")
        if self.kind == "maxima" and (self.selected_ranks != tuple(rows)
                                      or self.set_sizes != tuple(rows)):
            raise DomainError("maxima scheme must select the maximum of a size-i set in row i")

    @classmethod
    def standard(cls, n: int, cycles: int = 1, literal: bool = False) -> "RssScheme":
        return cls("standard", n, tuple(range(1, n + 1)), (n,) * n, cycles, literal)

    @classmethod
    def maxima(cls, n: int, cycles: int = 1, literal: bool = False) -> "RssScheme":
        rows = tuple(range(1, n + 1))
        return cls("maxima", n, rows, rows, cycles, literal)

    @classmethod
    def custom(cls, set_sizes, selected_ranks, cycles: int = 1, literal: bool = False) -> "RssScheme":
        return cls("custom", len(set_sizes), tuple(selected_ranks), tuple(set_sizes), cycles, literal)

    @property
    def column_names(self) -> list[str]:
        return [f"X[{r},{s}]" for r, s in zip(self.selected_ranks, self.set_sizes)]

    def base_draws_per_cycle(self, rows=None) -> int:
        rows = range(self.n) if rows is None else rows
        return sum(self.set_sizes[i] for i in rows)


def _column(scheme: RssScheme, row: int, base: ContinuousDistribution, cfg: McConfig) -> np.ndarray:
    """All cycles of one row (0-based), drawn from sub-stream ``row + 1``."""
    rank, size = scheme.selected_ranks[row], scheme.set_sizes[row]
    cyc = cfg.with_n(scheme.cycles)
    if not scheme.literal:
        return sample_os(OrderStatisticLaw(rank, size, base), cyc, row + 1)
    u = uniforms(cyc, row + 1, size=(scheme.cycles, size))
    units = np.asarray(base.quantile(u.ravel()), dtype=float).reshape(u.shape)
    return np.sort(units, axis=1)[:, rank - 1]


def generate_rss(scheme: RssScheme, base: ContinuousDistribution, cfg: McConfig) -> np.ndarray:
    """Matrix of shape ``(cycles, rows)``; entry (c, i) is one draw of ``X_[r_i, s_i]``.

    Row i reads its own sub-stream and cycle c consumes the c-th block of
    it, so every entry is a fixed function of ``(seed, stream, c, i)``.
    ``cfg.n`` is ignored in favor of ``scheme.cycles``.
    """
    cols = [_column(scheme, i, base, cfg) for i in range(scheme.n)]
    return np.column_stack(cols)


def maxima_chain_reconstruct(base: ContinuousDistribution, k: int, n: int, cfg: McConfig,
                             literal: bool = True) -> np.ndarray:
    """Per-cycle product of maxima-scheme rows k..n, for ``cfg.n`` cycles.

    For a power base the result is distributed as ``X_{k:n}``. The literal path
    uses exactly ``k + (k+1) + ... + n`` base draws per cycle.
    """
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    scheme = RssScheme.maxima(n, cycles=cfg.n, literal=literal)
    out = np.ones(cfg.n)
    for row in range(k - 1, n):
        out *= _column(scheme, row, base, cfg)
    return out
