# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for the outdated-CSI series and the coverage integrand.

Same contract as _pykernels.py; per-point C loops with log-space coefficients.
"""

import numpy as np

from libc.math cimport INFINITY, exp, expm1, pow

BACKEND_NAME = "cython"


cdef double _pdf_point(double g, double beta, double scale, double rho,
                       int k_max, double term_tol) noexcept nogil:
    cdef double u, w, pref, c, coef, wterm, inner, total, block
    cdef int k
    if g <= 0.0:
        if beta > 1.0:
            return 0.0
        if beta == 1.0:
            return 1.0 / scale
        return INFINITY
    u = pow(g / scale, beta)
    w = u / rho
    pref = beta * u / g * exp(-w)
    if rho >= 1.0:
        return pref
    # block_k = pref * ((1-rho^2) w)^k / k! * sum_{m<=k} w^m / m!; the
    # recurrences stay in range wherever pref is nonzero (inner < e^w),
    # and pref*coef is formed first so inner never overflows the product
    c = (1.0 - rho * rho) * w
    coef = 1.0
    wterm = 1.0
    inner = 1.0
    total = pref
    for k in range(1, k_max + 1):
        wterm *= w / k
        inner += wterm
        coef *= c / k
        block = pref * coef * inner
        total += block
        if k >= 3 and block <= term_tol * total:
            break
    return total


cdef double _cdf_point(double x, double beta, double scale, double rho,
                       int k_max, double term_tol) noexcept nogil:
    cdef double u, w, p, pois, total, term, r, fac
    cdef int k
    if x <= 0.0:
        return 0.0
    u = pow(x / scale, beta)
    w = u / rho
    p = -expm1(-w)
    if rho >= 1.0:
        return p
    total = rho * p
    fac = 1.0 - rho * rho
    r = 1.0
    pois = exp(-w)
    for k in range(1, k_max + 1):
        pois *= w / k
        p -= pois
        if p < 0.0:
            p = 0.0
        r *= fac
        term = rho * r * p
        total += term
        if k >= 3 and term <= term_tol * total:
            break
    return total


def outdated_pdf(double[::1] g, double beta, double scale, double rho,
                 int k_max, double term_tol):
    cdef Py_ssize_t n = g.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(n):
        o[i] = _pdf_point(g[i], beta, scale, rho, k_max, term_tol)
    return out


def outdated_cdf(double[::1] x, double beta, double scale, double rho,
                 int k_max, double term_tol):
    cdef Py_ssize_t n = x.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(n):
        o[i] = _cdf_point(x[i], beta, scale, rho, k_max, term_tol)
    return out


def coverage_integrand(double[::1] g, double beta_e, double scale_e, double rho,
                       int k_max, double term_tol, double beta_s, double scale_s,
                       double pow2r, double gamma_th):
    cdef Py_ssize_t n = g.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    cdef double theta
    for i in range(n):
        theta = pow((pow2r * g[i] + gamma_th) / scale_s, beta_s)
        o[i] = exp(-theta) * _pdf_point(g[i], beta_e, scale_e, rho, k_max, term_tol)
    return out
