"""Continuous distributions on an interval.

Includes the power function family Pow(alpha) (cdf ``x**alpha`` on (0, 1)),
the Pareto family Par(alpha) (cdf ``1 - y**-alpha`` on (1, inf)), the uniform
law, three non-power control laws on (0, 1) and tabulated CDFs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError
from .rng import McConfig, uniforms

Array = np.ndarray


@dataclass(frozen=True)
class PowParams:
    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise DomainError(f"Pow shape must be positive, got {self.alpha}")


@dataclass(frozen=True)
class ParParams:
    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise DomainError(f"Par shape must be positive, got {self.alpha}")


def _scalar_or_array(x: Array):
    return float(x) if np.ndim(x) == 0 else x


def _require_open(x, lo, hi, what):
    xa = np.asarray(x, dtype=float)
    if np.any(~((xa > lo) & (xa < hi))):
        raise DomainError(f"{what} requires argument in ({lo}, {hi})")
    return xa


def pow_cdf(x, p: PowParams):
    xa = _require_open(x, 0.0, 1.0, "pow_cdf")
    return _scalar_or_array(xa ** p.alpha)


def pow_pdf(x, p: PowParams):
    xa = _require_open(x, 0.0, 1.0, "pow_pdf")
    return _scalar_or_array(p.alpha * xa ** (p.alpha - 1.0))


def pow_quantile(u, p: PowParams):
    ua = _require_open(u, 0.0, 1.0, "pow_quantile")
    return _scalar_or_array(ua ** (1.0 / p.alpha))


def par_cdf(y, p: ParParams):
    ya = np.asarray(y, dtype=float)
    if np.any(~(ya > 1.0)):
        raise DomainError("par_cdf requires y > 1")
    return _scalar_or_array(-np.expm1(-p.alpha * np.log(ya)))


def par_pdf(y, p: ParParams):
    ya = np.asarray(y, dtype=float)
    if np.any(~(ya > 1.0)):
        raise DomainError("par_pdf requires y > 1")
    return _scalar_or_array(p.alpha * ya ** (-p.alpha - 1.0))


def par_quantile(u, p: ParParams):
    ua = _require_open(u, 0.0, 1.0, "par_quantile")
    return _scalar_or_array(np.exp(-np.log1p(-ua) / p.alpha))


@dataclass(frozen=True)
class ContinuousDistribution:
    """An absolutely continuous law on the interval ``support``.

    ``cdf`` is defined on the whole real line (0 left of the support, 1 right
    of it). ``pdf`` is only evaluated on the open support and raises
    :class:`DomainError` elsewhere, so an unbounded density at an endpoint is
    never silently returned as ``inf``. ``quantile`` maps (0, 1) into the
    support.

    The raw callables receive arguments already restricted to the closed
    support (``cdf``) or open support (``pdf``), and must be vectorized.
    """

    name: str
    raw_cdf: Callable[[Array], Array] = field(repr=False)
    raw_pdf: Callable[[Array], Array] = field(repr=False)
    raw_quantile: Callable[[Array], Array] = field(repr=False)
    support: tuple[float, float] = (0.0, 1.0)
    alpha: float | None = None  # set for members of the power family

    @property
    def left(self) -> float:
        return self.support[0]

    @property
    def right(self) -> float:
        return self.support[1]

    @property
    def on_unit_interval(self) -> bool:
        return self.support == (0.0, 1.0)

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        if np.any(np.isnan(xa)):
            raise DomainError("cdf argument is NaN")
        inside = np.clip(xa, self.left, self.right)
        out = np.where(xa <= self.left, 0.0,
                       np.where(xa >= self.right, 1.0, self.raw_cdf(inside)))
        return _scalar_or_array(np.clip(out, 0.0, 1.0))

    def pdf(self, x):
        xa = _require_open(x, self.left, self.right, f"{self.name} pdf")
        return _scalar_or_array(np.asarray(self.raw_pdf(xa), dtype=float))

    def quantile(self, u):
        ua = _require_open(u, 0.0, 1.0, f"{self.name} quantile")
        return _scalar_or_array(np.asarray(self.raw_quantile(ua), dtype=float))


def power(alpha: float) -> ContinuousDistribution:
    p = PowParams(float(alpha))
    a = p.alpha
    return ContinuousDistribution(
        name=f"pow:{a!r}",
        raw_cdf=lambda x: x ** a,
        raw_pdf=lambda x: a * x ** (a - 1.0),
        raw_quantile=lambda u: u ** (1.0 / a),
        alpha=a,
    )


def uniform() -> ContinuousDistribution:
    d = power(1.0)
    return ContinuousDistribution("uniform", d.raw_cdf, d.raw_pdf, d.raw_quantile, alpha=1.0)


def pareto(alpha: float) -> ContinuousDistribution:
    p = ParParams(float(alpha))
    a = p.alpha
    return ContinuousDistribution(
        name=f"par:{a!r}",
        raw_cdf=lambda y: -np.expm1(-a * np.log(y)),
        raw_pdf=lambda y: a * y ** (-a - 1.0),
        raw_quantile=lambda u: np.exp(-np.log1p(-u) / a),
        support=(1.0, math.inf),
    )


def invert_cdf(cdf, pdf, u, lo=0.0, hi=1.0, xtol=1e-15, max_iter=200):
    """Solve ``cdf(x) = u`` elementwise by Newton steps safeguarded by bisection."""
    u = np.asarray(u, dtype=float)
    a = np.full(u.shape, lo, dtype=float)
    b = np.full(u.shape, hi, dtype=float)
    x = lo + (hi - lo) * u
    for _ in range(max_iter):
        g = cdf(x) - u
        a = np.where(g < 0, x, a)
        b = np.where(g > 0, x, b)
        d = pdf(np.clip(x, np.nextafter(lo, hi), np.nextafter(hi, lo)))
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(d > 0, x - g / d, np.nan)
        bisect = 0.5 * (a + b)
        nxt = np.where((step > a) & (step < b), step, bisect)
        nxt = np.where(g == 0, x, nxt)
        if np.all(np.abs(nxt - x) <= xtol):
            return nxt
        x = nxt
    return x


def _make_numeric(name, cdf, pdf, quantile=None):
    if quantile is None:
        def quantile(u):
            return invert_cdf(cdf, pdf, u)
    return ContinuousDistribution(name=name, raw_cdf=cdf, raw_pdf=pdf, raw_quantile=quantile)


_EM1 = math.e - 1.0


def expshape() -> ContinuousDistribution:
    """Control law with cdf ``(e**x - 1) / (e - 1)`` on (0, 1)."""
    return _make_numeric(
        "expshape",
        lambda x: np.expm1(x) / _EM1,
        lambda x: np.exp(x) / _EM1,
        lambda u: np.log1p(u * _EM1),
    )


def sinshape() -> ContinuousDistribution:
    """Control law with cdf ``sin(pi x / 2)`` on (0, 1)."""
    return _make_numeric(
        "sinshape",
        lambda x: np.sin(0.5 * np.pi * x),
        lambda x: 0.5 * np.pi * np.cos(0.5 * np.pi * x),
        lambda u: np.arcsin(u) * (2.0 / np.pi),
    )


def wiggle() -> ContinuousDistribution:
    """Control law with cdf ``x + 0.1 sin(2 pi x)`` on (0, 1).

    Already normalized: the cdf is 0 at 0, 1 at 1 and its density
    ``1 + 0.2 pi cos(2 pi x)`` stays above 0.37.
    """
    return _make_numeric(
        "wiggle",
        lambda x: x + 0.1 * np.sin(2.0 * np.pi * x),
        lambda x: 1.0 + 0.2 * np.pi * np.cos(2.0 * np.pi * x),
    )


CONTROLS = {"expshape": expshape, "sinshape": sinshape, "wiggle": wiggle}


def tabulated(xs, ps, name="tabulated") -> ContinuousDistribution:
    """Distribution from a tabulated CDF, interpolated by monotone cubic (PCHIP).

    ``xs`` and ``ps`` must both be strictly increasing, with ``ps`` running
    from 0 at ``xs[0]`` to 1 at ``xs[-1]``.
    """
    xs = np.asarray(xs, dtype=float)
    ps = np.asarray(ps, dtype=float)
    if xs.ndim != 1 or xs.shape != ps.shape or xs.size < 2:
        raise DomainError("tabulated cdf needs two equal-length columns of at least 2 rows")
    if np.any(np.diff(xs) <= 0):
        raise DomainError("tabulated cdf abscissae must be strictly increasing")
    if np.any(np.diff(ps) <= 0):
        raise DomainError("tabulated cdf values must be strictly increasing")
    if ps[0] != 0.0 or ps[-1] != 1.0:
        raise DomainError("tabulated cdf must start at 0 and end at 1")
    interp = PchipInterpolator(xs, ps, extrapolate=False)
    dens = interp.derivative()
    lo, hi = float(xs[0]), float(xs[-1])

    def pdf(x):
        return np.maximum(dens(x), 0.0)

    return ContinuousDistribution(
        name=name,
        raw_cdf=interp,
        raw_pdf=pdf,
        raw_quantile=lambda u: invert_cdf(interp, pdf, u, lo, hi),
        support=(lo, hi),
    )


def sample(dist: ContinuousDistribution, cfg: McConfig, *sub: int) -> np.ndarray:
    """``cfg.n`` inverse-transform draws from ``dist`` on stream ``(cfg.stream, *sub)``."""
    return np.asarray(dist.quantile(uniforms(cfg, *sub)), dtype=float).reshape(cfg.n)
