"""Weibull fading SNR model and the correlated (outdated, current) wiretap pair.

The SNR of a link with Weibull shape beta and mean gamma_bar is distributed as

    F(x) = 1 - exp(-(x / scale)^beta),   scale = gamma_bar / Gamma(1 + 1/beta),

i.e. a Weibull variate whose mean is exactly gamma_bar. The eavesdropper link
is observed through an outdated estimate: the sampler draws correlated complex
Gaussians h_cur and h_out = rho * h_cur + sqrt(1 - rho^2) * v, whose squared
envelopes are unit-mean exponentials with power-domain Pearson correlation
rho^2, and maps both through t -> scale * t^(1/beta).
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, SingularityError
from .specfun import gamma

__all__ = [
    "RHO_MIN",
    "LinkParams",
    "WiretapModel",
    "SnrPair",
    "db_to_linear",
    "weibull_snr_cdf",
    "weibull_snr_pdf",
    "sample_snr",
    "sample_correlated_pair",
]

# The analytic series divide by powers of rho; reject anything this close to 0.
RHO_MIN = 1e-6


def db_to_linear(snr_db: float) -> float:
    """Convert a mean SNR in dB to linear scale."""
    return 10.0 ** (snr_db / 10.0)


@dataclass(frozen=True)
class LinkParams:
    """One fading link: Weibull shape and mean SNR (linear)."""

    shape: float
    mean_snr: float

    def __post_init__(self):
        if self.shape <= 0:
            raise DomainError(f"shape must be > 0, got {self.shape}")
        if self.mean_snr <= 0:
            raise DomainError(f"mean_snr must be > 0, got {self.mean_snr}")

    @classmethod
    def from_db(cls, shape: float, mean_snr_db: float) -> "LinkParams":
        return cls(shape=shape, mean_snr=db_to_linear(mean_snr_db))

    @cached_property
    def alpha(self) -> float:
        return 1.0 + 1.0 / self.shape

    @cached_property
    def scale(self) -> float:
        return self.mean_snr / gamma(self.alpha)


@dataclass(frozen=True)
class WiretapModel:
    """A wiretap link plus the CSI-outdatedness correlation coefficient."""

    link: LinkParams
    rho: float

    def __post_init__(self):
        if self.rho <= RHO_MIN:
            raise SingularityError(f"rho must exceed {RHO_MIN}, got {self.rho}")
        if self.rho > 1.0:
            raise DomainError(f"rho must be <= 1, got {self.rho}")


@dataclass(frozen=True)
class SnrPair:
    """SNRs of one wiretap realization: what the sink knows vs what holds now."""

    outdated: object  # float or ndarray
    current: object


def _check_nonneg(x, name):
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise DomainError(f"{name} must be >= 0")
    return arr


def weibull_snr_cdf(x, link: LinkParams):
    """CDF of the link SNR; accepts a scalar or an array."""
    arr = _check_nonneg(x, "x")
    out = -np.expm1(-((arr / link.scale) ** link.shape))
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


def weibull_snr_pdf(x, link: LinkParams):
    """Density of the link SNR; accepts a scalar or an array."""
    arr = _check_nonneg(x, "x")
    b, lam = link.shape, link.scale
    with np.errstate(divide="ignore"):
        # x=0 limits: 0 for shape>1, 1/scale for shape=1, +inf for shape<1
        out = (b / lam) * (arr / lam) ** (b - 1.0) * np.exp(-((arr / lam) ** b))
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


def sample_snr(link: LinkParams, rng: np.random.Generator, size=None):
    """Draw SNR(s) distributed per weibull_snr_cdf: scale * E^(1/beta)."""
    e = rng.standard_exponential(size)
    return link.scale * e ** (1.0 / link.shape)


def sample_correlated_pair(model: WiretapModel, rng: np.random.Generator, size=None) -> SnrPair:
    """Draw correlated (outdated, current) wiretap SNRs.

    Draw order is fixed (4 standard normals per variate: current gain first,
    then the innovation term), which the Monte Carlo module relies on for
    reproducibility. At rho=1 the components are identical bit-for-bit.
    """
    if size is None:
        z = rng.standard_normal(4)
    else:
        z = rng.standard_normal(tuple(np.atleast_1d(size)) + (4,))
    # unit-mean exponential envelopes of CN(0,1) gains
    e_cur = 0.5 * (z[..., 0] ** 2 + z[..., 1] ** 2)
    rho = model.rho
    if rho == 1.0:
        e_out = e_cur
    else:
        s = np.sqrt(1.0 - rho * rho)
        e_out = 0.5 * ((rho * z[..., 0] + s * z[..., 2]) ** 2 + (rho * z[..., 1] + s * z[..., 3]) ** 2)
    b_inv = 1.0 / model.link.shape
    lam = model.link.scale
    out = lam * e_out**b_inv
    cur = lam * e_cur**b_inv
    if size is None:
        return SnrPair(outdated=float(out), current=float(cur))
    return SnrPair(outdated=out, current=cur)
