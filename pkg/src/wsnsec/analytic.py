"""Series expressions of the outdated-CSI wiretap model and the per-node SOP.

Provides:
    bivariate_weibull_pdf  -- joint density series of two correlated Weibull SNRs
    outdated_wiretap_pdf   -- marginal density series of the outdated wiretap SNR
    outdated_wiretap_cdf   -- matching CDF series (incomplete-gamma terms)
    normalization_defect   -- integral of the truncated pdf minus 1 (diagnostic)
    sop_per_node           -- secrecy outage probability of a single node by
                              semi-infinite adaptive quadrature

The truncated marginal series is not a proper density for rho < 1: its total
mass is rho * sum_k (1-rho^2)^k * C(2k+1, k+1), which exceeds 1 and, untruncated,
diverges for rho <= sqrt(3)/2. The series is evaluated as defined, without
renormalization; normalization_defect quantifies the excess mass and
probabilities computed from the series are clamped to [0, 1] with a logged
warning. The Monte Carlo module provides the semantically faithful counterpart.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .channel import RHO_MIN, LinkParams, WiretapModel
from .errors import DomainError, SingularityError
from .quadrature import integrate_adaptive

__all__ = [
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
]

log = logging.getLogger("wsnsec")

# raw probabilities may exceed [0,1] by more than this before a warning is logged
CLAMP_WARN_TOL = 1e-6


@dataclass(frozen=True)
class SeriesSettings:
    """Outer-series truncation index and early-stop threshold."""

    k_max: int = 10
    term_tol: float = 1e-12

    def __post_init__(self):
        if self.k_max < 1:
            raise DomainError(f"k_max must be >= 1, got {self.k_max}")
        if self.term_tol <= 0:
            raise DomainError(f"term_tol must be > 0, got {self.term_tol}")


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_refinements: int = 50

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise DomainError("quadrature tolerances must be > 0")
        if self.max_refinements < 1:
            raise DomainError("max_refinements must be >= 1")


@dataclass(frozen=True)
class NodeChannel:
    """One sensor's link pair: main (to the sink) and wiretap (to the eavesdropper)."""

    main: LinkParams
    wiretap: WiretapModel


_DEFAULT_SERIES = SeriesSettings()
_DEFAULT_QUAD = QuadratureSettings()


def _series(s):
    return _DEFAULT_SERIES if s is None else s


def _quad(q):
    return _DEFAULT_QUAD if q is None else q


def _check_rho(rho):
    if rho <= RHO_MIN:
        raise SingularityError(f"series is singular for rho <= {RHO_MIN}, got {rho}")
    if rho > 1.0:
        raise DomainError(f"rho must be <= 1, got {rho}")


def _clamp_probability(p: float, context: str) -> float:
    if p < -CLAMP_WARN_TOL or p > 1.0 + CLAMP_WARN_TOL:
        log.warning(
            "%s: raw value %.6g outside [0, 1], clamped (series normalization defect)",
            context,
            p,
        )
    return min(max(p, 0.0), 1.0)


def bivariate_weibull_pdf(y1, y2, mu1, mu2, beta, rho, s: SeriesSettings | None = None):
    """Joint density series of two correlated Weibull-form variates.

    mu1, mu2 enter as the beta-th power scales; the k=0 term factorizes into
    independent marginals at rho=1. Symmetric under (y1, mu1) <-> (y2, mu2).
    """
    s = _series(s)
    for name, v in (("y1", y1), ("y2", y2), ("mu1", mu1), ("mu2", mu2), ("beta", beta)):
        if v <= 0:
            raise DomainError(f"{name} must be > 0, got {v}")
    _check_rho(rho)
    rho2 = rho * rho
    expo = -(y1**beta / mu1 + y2**beta / mu2) / rho2
    lny = math.log(y1) + math.log(y2)
    lnmu = math.log(mu1) + math.log(mu2)
    base = 2.0 * math.log(beta) + expo
    total = 0.0
    lfac = math.log1p(-rho2) if rho < 1.0 else -math.inf
    for k in range(s.k_max + 1):
        # k * lfac, avoiding 0 * -inf = nan at rho = 1
        lt = (
            base
            + (k * lfac if k else 0.0)
            - (2 * k + 1) * math.log(rho)
            + ((k + 1) * beta - 1.0) * lny
            - (k + 1) * lnmu
            - 2.0 * math.lgamma(k + 1.0)
        )
        term = math.exp(lt)
        total += term
        if rho == 1.0:
            break
        if k >= 3 and term <= s.term_tol * total:
            break
    return total


def outdated_wiretap_pdf(g, model: WiretapModel, s: SeriesSettings | None = None):
    """Marginal density series of the outdated wiretap SNR (scalar or array)."""
    s = _series(s)
    if np.any(np.asarray(g) < 0):
        raise DomainError("g must be >= 0")
    link = model.link
    return _kernels.outdated_pdf(g, link.shape, link.scale, model.rho, s.k_max, s.term_tol)


def outdated_wiretap_cdf(x, model: WiretapModel, s: SeriesSettings | None = None):
    """CDF series of the outdated wiretap SNR (scalar or array).

    Nondecreasing in x; equals the plain Weibull CDF at rho=1. For rho < 1 the
    truncated series saturates toward 1/rho rather than 1 (normalization
    defect), so downstream probability uses clamp to [0, 1].
    """
    s = _series(s)
    if np.any(np.asarray(x) < 0):
        raise DomainError("x must be >= 0")
    link = model.link
    return _kernels.outdated_cdf(x, link.shape, link.scale, model.rho, s.k_max, s.term_tol)


def _integrate_semi_infinite(fn, c: float, q: QuadratureSettings):
    """Integrate fn over [0, inf) via t = gamma / (gamma + c), t in [0, 1).

    fn must accept an ndarray of gamma values. The far tail where the
    transformed integrand falls below 1e-16 of its peak is cut off before the
    adaptive pass.
    """

    def in_t(t):
        t = np.asarray(t, dtype=float)
        gam = c * t / (1.0 - t)
        jac = c / (1.0 - t) ** 2
        return fn(gam) * jac

    ts = np.linspace(0.0, 1.0, 257, endpoint=False)
    vals = in_t(ts)
    peak = float(np.max(vals))
    if peak <= 0.0:
        return 0.0, 0.0
    above = np.nonzero(vals > 1e-16 * peak)[0]
    step = ts[1] - ts[0]
    t_hi = min(float(ts[above[-1]]) + 2.0 * step, 1.0 - 1e-9)
    return integrate_adaptive(
        in_t, 0.0, t_hi, rel_tol=q.rel_tol, abs_tol=q.abs_tol, max_refinements=q.max_refinements
    )


def normalization_defect(
    model: WiretapModel,
    s: SeriesSettings | None = None,
    q: QuadratureSettings | None = None,
) -> float:
    """Quadrature of the truncated marginal series over [0, inf) minus 1.

    Zero (to quadrature accuracy) at rho=1; positive for rho < 1 and growing
    with k_max. See normalization_partial_sum for the closed-form counterpart.
    """
    s, q = _series(s), _quad(q)
    link = model.link

    def fn(gam):
        return _kernels.outdated_pdf(gam, link.shape, link.scale, model.rho, s.k_max, s.term_tol)

    value, _ = _integrate_semi_infinite(fn, link.mean_snr, q)
    return value - 1.0


def normalization_partial_sum(rho: float, k_max: int) -> float:
    """Closed-form mass of the truncated series: rho * sum_k (1-rho^2)^k C(2k+1, k+1).

    Follows from term-by-term integration and the hockey-stick identity
    sum_{m=0}^{k} C(m+k, k) = C(2k+1, k+1).
    """
    _check_rho(rho)
    x = 1.0 - rho * rho
    return rho * float(sum(math.comb(2 * k + 1, k + 1) * x**k for k in range(k_max + 1)))


def normalization_limit(rho: float) -> float:
    """Untruncated series mass; finite only for rho > sqrt(3)/2."""
    _check_rho(rho)
    d = 4.0 * rho * rho - 3.0
    if d <= 0.0:
        return math.inf
    return rho / (2.0 * (1.0 - rho * rho)) * (1.0 / math.sqrt(d) - 1.0) if rho < 1.0 else 1.0


def sop_per_node(
    ch: NodeChannel,
    rate_s: float,
    s: SeriesSettings | None = None,
    q: QuadratureSettings | None = None,
) -> float:
    """Secrecy outage probability of one node at target secrecy rate rate_s.

    Computes 1 - integral_0^inf exp(-theta(g)) f_outdated(g) dg with
    theta(g) = ((2^rate_s * g + gamma_th) / scale_main)^beta_main and
    gamma_th = 2^rate_s - 1, clamped to [0, 1].
    """
    if rate_s <= 0:
        raise DomainError(f"rate_s must be > 0, got {rate_s}")
    s, q = _series(s), _quad(q)
    main, model = ch.main, ch.wiretap
    link = model.link
    pow2r = 2.0**rate_s
    gamma_th = pow2r - 1.0

    def fn(gam):
        return _kernels.coverage_integrand(
            gam,
            link.shape,
            link.scale,
            model.rho,
            s.k_max,
            s.term_tol,
            main.shape,
            main.scale,
            pow2r,
            gamma_th,
        )

    coverage, _ = _integrate_semi_infinite(fn, link.mean_snr, q)
    return _clamp_probability(1.0 - coverage, "sop_per_node")
