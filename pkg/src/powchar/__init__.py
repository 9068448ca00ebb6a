"""Power function laws characterized through products of order statistics."""

from .characterization import (
    IdentityReport, estimate_alpha, power_gof, verify_identity_mc, verify_identity_numeric,
    verify_maxima_chain,
)
from .distributions import (
    ContinuousDistribution, ParParams, PowParams, expshape, par_cdf, par_pdf, par_quantile,
    pareto, pow_cdf, pow_pdf, pow_quantile, power, sample, sinshape, tabulated, uniform, wiggle,
)
from .errors import DomainError, InsufficientDataError, QuadratureError
from .order_stats import GosParams, OrderStatisticLaw, gos_joint_density, os_cdf, os_pdf, sample_os
from .product import (
    GridCdf, ProductChainSpec, chain_product_cdf, h_function, lemma_residual,
    power_product_closed_form, product_cdf, residual_profile,
)
from .quadrature import QuadratureConfig
from .rng import GENERATOR_VERSION, McConfig
from .rss import RssScheme, generate_rss, maxima_chain_reconstruct

__version__ = "0.1.0"
