"""Deterministic random streams.

Every random quantity in the package is drawn from a ``numpy`` PCG64DXSM
bit generator seeded through ``SeedSequence(seed, spawn_key=...)``. The spawn
key carries the stream id plus any sub-stream indices, so independent streams
never overlap and results are a pure function of ``(seed, stream, ...)``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

GENERATOR_NAME = "PCG64DXSM"
GENERATOR_VERSION = f"numpy-{np.__version__}/{GENERATOR_NAME}/SeedSequence/v1"

_TWO_POW_53 = float(2**53)


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo configuration: replicate count, seed and stream id."""

    n: int
    seed: int = 0
    stream: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"replicate count must be >= 1, got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.stream < 0:
            raise ValueError("stream id must be non-negative")

    def with_n(self, n: int) -> "McConfig":
        return replace(self, n=n)


def generator(cfg: McConfig, *sub: int) -> np.random.Generator:
    """Generator for ``cfg``'s stream, optionally narrowed to a sub-stream."""
    ss = np.random.SeedSequence(cfg.seed, spawn_key=(cfg.stream, *sub))
    return np.random.Generator(np.random.PCG64DXSM(ss))


def open_uniforms(rng: np.random.Generator, size) -> np.ndarray:
    """Uniform variates on the open interval (0, 1) with 53-bit resolution."""
    bits = rng.integers(0, 2**53, size=size, dtype=np.uint64)
    return (bits.astype(np.float64) + 0.5) / _TWO_POW_53


def uniforms(cfg: McConfig, *sub: int, size=None) -> np.ndarray:
    return open_uniforms(generator(cfg, *sub), cfg.n if size is None else size)
