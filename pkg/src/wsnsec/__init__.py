"""Secrecy outage analysis for multi-sensor wiretap networks on Weibull fading.

Analytic series and quadrature live in `analytic` and `schemes`; seeded Monte
Carlo counterparts in `montecarlo`; the channel model and samplers in
`channel`. Hot series kernels run on a compiled backend when the extension is
available, with a pure-Python fallback (see `use_backend`).
"""

from . import _kernels
from ._kernels import available_backends, use_backend
from .analytic import (
    NodeChannel,
    QuadratureSettings,
    SeriesSettings,
    bivariate_weibull_pdf,
    normalization_defect,
    normalization_limit,
    normalization_partial_sum,
    outdated_wiretap_cdf,
    outdated_wiretap_pdf,
    sop_per_node,
)
from .channel import (
    RHO_MIN,
    LinkParams,
    SnrPair,
    WiretapModel,
    db_to_linear,
    sample_correlated_pair,
    sample_snr,
    weibull_snr_cdf,
    weibull_snr_pdf,
)
from .errors import DomainError, QuadratureError, SingularityError
from .montecarlo import (
    McEstimate,
    McSettings,
    mc_best_node,
    mc_conditional_sop,
    mc_round_robin,
    mc_sop_per_node,
)
from .quadrature import gauss_kronrod, integrate_adaptive
from .schemes import (
    NetworkConfig,
    conditional_sop,
    secrecy_rate,
    sop_best_node,
    sop_round_robin,
)
from .specfun import (
    gamma,
    log_gamma,
    lower_incomplete_gamma,
    regularized_lower_gamma,
)

__version__ = "0.1.0"


def active_backend() -> str:
    """Name of the kernel backend currently in use ('python' or 'cython')."""
    return _kernels.BACKEND


__all__ = [
    "__version__",
    "active_backend",
    "available_backends",
    "use_backend",
    "DomainError",
    "SingularityError",
    "QuadratureError",
    "RHO_MIN",
    "LinkParams",
    "WiretapModel",
    "SnrPair",
    "db_to_linear",
    "weibull_snr_cdf",
    "weibull_snr_pdf",
    "sample_snr",
    "sample_correlated_pair",
    "gamma",
    "log_gamma",
    "lower_incomplete_gamma",
    "regularized_lower_gamma",
    "gauss_kronrod",
    "integrate_adaptive",
    "SeriesSettings",
    "QuadratureSettings",
    "NodeChannel",
    "bivariate_weibull_pdf",
    "outdated_wiretap_pdf",
    "outdated_wiretap_cdf",
    "normalization_defect",
    "normalization_partial_sum",
    "normalization_limit",
    "sop_per_node",
    "NetworkConfig",
    "secrecy_rate",
    "sop_round_robin",
    "sop_best_node",
    "conditional_sop",
    "McSettings",
    "McEstimate",
    "mc_sop_per_node",
    "mc_round_robin",
    "mc_best_node",
    "mc_conditional_sop",
]
