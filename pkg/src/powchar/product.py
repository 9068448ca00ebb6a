"""Product distributions of independent order statistics on (0, 1).

For independent ``Y ~ X_{k:n-1}`` and ``Z ~ X_{n:n}`` from a base law F on
(0, 1), the product ``YZ`` has cdf

    P(YZ <= y) = F_{k:n-1}(y) + int_y^1 F(y/u)^n f_{k:n-1}(u) du,

where the first term collects ``u <= y`` (there ``y/u >= 1`` so the maximum
factor is certainly small enough). For a power base this equals
``F_{k:n}(y)``; the residual functional below vanishes exactly in that case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from .distributions import ContinuousDistribution
from .errors import DomainError
from .order_stats import OrderStatisticLaw, beta_cdf_rank, os_cdf, os_pdf
from .quadrature import QuadratureConfig, integrate_many
from .special import log_binom

DEFAULT_QUAD = QuadratureConfig()
CHAIN_GRID_SIZE = 513
RESIDUAL_X_MIN = 1e-6
_ONE_MINUS = np.nextafter(1.0, 0.0)


def _require_unit_base(base: ContinuousDistribution):
    if not base.on_unit_interval:
        raise DomainError(f"{base.name} is not supported on (0, 1); extremities must be 0 and 1")


def _require_open_unit(y, what):
    ya = np.asarray(y, dtype=float)
    if np.any(~((ya > 0.0) & (ya < 1.0))):
        raise DomainError(f"{what} requires arguments in (0, 1)")
    return ya


def _require_pair(k, n):
    if not (n >= 2 and 1 <= k <= n - 1):
        raise DomainError(f"need 1 <= k <= n - 1, got k={k}, n={n}")


def _unwrap(arr, like):
    return float(arr.reshape(())) if np.ndim(like) == 0 else arr.reshape(np.shape(like))


def product_cdf(k: int, n: int, base: ContinuousDistribution, y, q: QuadratureConfig = DEFAULT_QUAD):
    """Cdf of ``Y_{k:n-1} * Z_{n:n}`` at ``y`` (scalar or array)."""
    _require_pair(k, n)
    _require_unit_base(base)
    ya = _require_open_unit(y, "product_cdf").ravel()
    inner = OrderStatisticLaw(k, n - 1, base)

    def integrand(u, j):
        return np.asarray(base.cdf(ya[j] / u)) ** n * os_pdf(inner, u)

    tail, _ = integrate_many(integrand, ya, 1.0, q)
    out = np.asarray(os_cdf(inner, ya)) + tail
    return _unwrap(np.clip(out, 0.0, 1.0), y)


def power_product_closed_form(k: int, n: int, alpha: float, x):
    """Closed-form ``P(Y_{k:n-1} Z_{n:n} <= x)`` for a Pow(alpha) base.

    The tail integral evaluates to ``c * x**(alpha n) * (x**-alpha - 1)**(n-k)``
    with ``c = (n-1)! / ((k-1)! (n-k)!)``, which is ``k C(n-1, k) / (n-k)``.
    It is computed as ``c t**k (1-t)**(n-k)`` with ``t = x**alpha``.
    """
    _require_pair(k, n)
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    xa = _require_open_unit(x, "power_product_closed_form")
    t = xa ** alpha
    with np.errstate(divide="ignore"):
        tail = np.exp(log_binom(n - 1, k - 1) + k * np.log(t) + (n - k) * np.log1p(-t))
    out = np.asarray(beta_cdf_rank(k, n - 1, t)) + tail
    return float(out) if np.ndim(out) == 0 else out


def chebyshev_grid(size: int) -> np.ndarray:
    """Chebyshev nodes of the first kind mapped to (0, 1), increasing."""
    j = np.arange(1, size + 1)
    return 0.5 * (1.0 - np.cos((2 * j - 1) * np.pi / (2 * size)))


@dataclass(frozen=True)
class GridCdf:
    """A cdf on (0, 1) tabulated on a strictly increasing grid.

    Evaluation interpolates ``log p`` against ``log x`` with a monotone cubic
    (PCHIP) through the anchor ``(1, 1)``; below the first grid point it
    extends the first log-log segment as a power law. Product cdfs behave like
    ``y * polylog(y)`` near 0, which is close to linear on that scale.
    """

    xs: np.ndarray
    ps: np.ndarray
    tolerance: float

    def __post_init__(self):
        if np.any(np.diff(self.xs) <= 0) or self.xs[0] <= 0 or self.xs[-1] >= 1:
            raise DomainError("grid must be strictly increasing inside (0, 1)")
        if np.any(np.diff(self.ps) < 0) or self.ps[0] < 0 or self.ps[-1] > 1:
            raise DomainError("grid probabilities must be nondecreasing in [0, 1]")
        keep = self.ps > 0
        lx = np.append(np.log(self.xs[keep]), 0.0)
        lp = np.append(np.log(self.ps[keep]), 0.0)
        # drop flat tail points; PCHIP needs strictly increasing abscissae only
        object.__setattr__(self, "_interp", PchipInterpolator(lx, lp, extrapolate=False))
        slope = (lp[1] - lp[0]) / (lx[1] - lx[0]) if lx.size > 1 else 1.0
        object.__setattr__(self, "_head", (lx[0], lp[0], slope))

    def __call__(self, x):
        xa = np.asarray(x, dtype=float)
        out = np.ones(xa.shape)
        pos = xa > 0
        out[~pos] = 0.0
        inside = pos & (xa < 1.0)
        lx = np.log(xa[inside])
        lx0, lp0, slope = self._head
        below = lx < lx0
        vals = np.empty(lx.shape)
        vals[~below] = np.exp(self._interp(lx[~below]))
        vals[below] = np.exp(lp0 + slope * (lx[below] - lx0))
        out[inside] = np.minimum(vals, 1.0)
        return out


@dataclass(frozen=True)
class ProductChainSpec:
    """Chain ``X_[k:k] X_[k+1:k+1] ... X_[n:n]`` of independent sample maxima."""

    k: int
    n: int
    base: ContinuousDistribution

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise DomainError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")


def _times_max(prev, base, size, ys, q):
    """Cdf at ``ys`` of ``P * M`` where P has cdf ``prev`` and M is a size-``size`` maximum."""
    law = OrderStatisticLaw(size, size, base)

    def integrand(m, j):
        return prev(np.minimum(ys[j] / m, 1.0)) * os_pdf(law, m)

    tail, _ = integrate_many(integrand, ys, 1.0, q)
    return np.asarray(base.cdf(ys)) ** size + tail


def chain_grid(spec: ProductChainSpec, upto: int, q: QuadratureConfig = DEFAULT_QUAD,
               grid_size: int = CHAIN_GRID_SIZE) -> GridCdf:
    """Tabulated cdf of the partial chain ``X_[k:k] ... X_[upto:upto]``."""
    xs = chebyshev_grid(grid_size)
    ps = np.asarray(spec.base.cdf(xs)) ** spec.k
    for i in range(spec.k + 1, upto + 1):
        prev = GridCdf(xs, ps, q.abs_tol)
        ps = _times_max(prev, spec.base, i, xs, q)
        ps = np.clip(np.maximum.accumulate(ps), 0.0, 1.0)
    return GridCdf(xs, ps, q.abs_tol)


def chain_product_cdf(spec: ProductChainSpec, y, q: QuadratureConfig = DEFAULT_QUAD,
                      grid_size: int = CHAIN_GRID_SIZE):
    """Cdf of the product of independent maxima of sizes ``k, k+1, ..., n``.

    Factors are multiplied left to right. Intermediate products live on a
    shared Chebyshev grid; the last factor is applied directly at ``y``.
    """
    _require_unit_base(spec.base)
    ya = _require_open_unit(y, "chain_product_cdf").ravel()
    if spec.k == spec.n:
        out = np.asarray(os_cdf(OrderStatisticLaw(spec.n, spec.n, spec.base), ya))
    else:
        prev = chain_grid(spec, spec.n - 1, q, grid_size)
        out = _times_max(prev, spec.base, spec.n, ya, q)
    return _unwrap(np.clip(out, 0.0, 1.0), y)


def h_function(base: ContinuousDistribution, x):
    """``H(x) = x f(x) / F(x)``; constant (= alpha) exactly for power laws."""
    xa = np.asarray(x, dtype=float)
    f = np.asarray(base.pdf(xa), dtype=float)
    F = np.asarray(base.cdf(xa), dtype=float)
    if np.any(F <= 0):
        raise DomainError("H is undefined where F(x) = 0")
    out = xa * f / F
    return float(out) if np.ndim(out) == 0 else out


def _residual(base, k, n, xa, q):
    inner = OrderStatisticLaw(k, n - 1, base)
    hx = np.asarray(h_function(base, xa))

    def integrand(u, j):
        r = np.minimum(xa[j] / u, _ONE_MINUS)
        Fr = np.asarray(base.cdf(r))
        # F^n(r) [H(x) - H(r)] written without dividing by F(r)
        val = Fr ** n * hx[j] - Fr ** (n - 1) * r * np.asarray(base.pdf(r))
        return val * os_pdf(inner, u)

    vals, _ = integrate_many(integrand, xa, 1.0, q)
    return vals


def lemma_residual(base: ContinuousDistribution, k: int, n: int, x, q: QuadratureConfig = DEFAULT_QUAD):
    """``int_x^1 F^n(x/u) [H(x) - H(x/u)] f_{k:n-1}(u) du``.

    Zero for every x exactly when H is constant. Arguments below
    ``RESIDUAL_X_MIN`` are clamped up to it; use :func:`residual_profile` to
    see the domain actually evaluated.
    """
    _require_pair(k, n)
    _require_unit_base(base)
    xa = np.maximum(_require_open_unit(x, "lemma_residual").ravel(), RESIDUAL_X_MIN)
    return _unwrap(_residual(base, k, n, xa, q), x)


@dataclass(frozen=True)
class ResidualProfile:
    x_requested: np.ndarray
    x_evaluated: np.ndarray
    values: np.ndarray

    @property
    def clamped(self) -> bool:
        return bool(np.any(self.x_evaluated != self.x_requested))

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.x_evaluated.min()), float(self.x_evaluated.max())

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


def residual_profile(base, k, n, xs, q: QuadratureConfig = DEFAULT_QUAD) -> ResidualProfile:
    xs = _require_open_unit(xs, "residual_profile").ravel()
    xe = np.maximum(xs, RESIDUAL_X_MIN)
    return ResidualProfile(xs, xe, np.asarray(lemma_residual(base, k, n, xe, q)))


def interior_grid(size: int) -> np.ndarray:
    """``size`` equally spaced points ``i / (size + 1)`` strictly inside (0, 1)."""
    if size < 1:
        raise DomainError("grid size must be >= 1")
    return np.arange(1, size + 1) / (size + 1)
