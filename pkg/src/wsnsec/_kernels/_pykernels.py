"""Pure-numpy kernels for the outdated-CSI series and the coverage integrand.

Mirror of the compiled backend in _ckernels.pyx. Inputs are 1-D float64
arrays (the package-level wrappers coerce); all factorial-heavy coefficients
are kept in log space. The outer-k early stop follows the truncation rule:
stop once a full inner-m block contributes less than term_tol of the running
sum and k >= 3 (checked across all evaluation points at once, where the
compiled backend checks per point; differences are below term_tol).
"""

import math

import numpy as np

BACKEND_NAME = "python"


def _lgamma_table(n: int) -> np.ndarray:
    return np.array([math.lgamma(k + 1.0) for k in range(n + 1)])


def outdated_pdf(g, beta, scale, rho, k_max, term_tol):
    """Truncated double-series density of the outdated wiretap SNR."""
    out = np.zeros(g.shape)
    pos = g > 0.0
    if not np.all(pos):
        if beta == 1.0:
            out[~pos] = 1.0 / scale  # only the k=m=0 term survives at g=0
        elif beta < 1.0:
            out[~pos] = np.inf
        if not np.any(pos):
            return out
    gp = g[pos]
    u = (gp / scale) ** beta
    w = u / rho
    lnw = np.log(w)
    base = np.log(beta * u / gp) - w
    total = np.exp(base)  # k = 0 block (inner sum is 1)
    if rho < 1.0:
        lg = _lgamma_table(k_max)
        lfac = math.log1p(-rho * rho)
        log_inner = np.zeros_like(w)  # ln sum_{m<=k} w^m/m!, starts at m=0
        for k in range(1, k_max + 1):
            log_inner = np.logaddexp(log_inner, k * lnw - lg[k])
            block = np.exp(base + k * (lfac + lnw) - lg[k] + log_inner)
            total = total + block
            if k >= 3 and np.all(block <= term_tol * total):
                break
    out[pos] = total
    return out


def outdated_cdf(x, beta, scale, rho, k_max, term_tol):
    """Truncated series CDF of the outdated wiretap SNR (saturates at 1/rho)."""
    u = (x / scale) ** beta
    w = u / rho
    p = -np.expm1(-w)  # regularized P(1, w)
    total = rho * p
    if rho < 1.0:
        lg = _lgamma_table(k_max)
        fac = 1.0 - rho * rho
        lnw = np.where(w > 0, np.log(np.where(w > 0, w, 1.0)), -np.inf)
        r = 1.0
        for k in range(1, k_max + 1):
            pois = np.exp(k * lnw - w - lg[k])
            p = np.maximum(p - pois, 0.0)  # P(k+1, w) via downward recurrence
            r *= fac
            term = rho * r * p
            total = total + term
            if k >= 3 and np.all(term <= term_tol * total):
                break
    return total


def coverage_integrand(g, beta_e, scale_e, rho, k_max, term_tol, beta_s, scale_s, pow2r, gamma_th):
    """exp(-theta(g)) * outdated_pdf(g): the secrecy coverage integrand."""
    theta = ((pow2r * g + gamma_th) / scale_s) ** beta_s
    return np.exp(-theta) * outdated_pdf(g, beta_e, scale_e, rho, k_max, term_tol)
