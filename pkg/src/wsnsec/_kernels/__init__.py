"""Series-kernel backend selection: compiled extension with numpy fallback.

The compiled core (_ckernels, built from _ckernels.pyx) is preferred when it
imported cleanly; otherwise the numpy implementation (_pykernels) is used.
Set the environment variable WSNSEC_PURE_PYTHON=1 to force the fallback, or
call use_backend() at runtime (used by the benchmark and the parity tests).
"""

import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

__all__ = [
    "BACKEND",
    "available_backends",
    "use_backend",
    "outdated_pdf",
    "outdated_cdf",
    "coverage_integrand",
]

BACKEND = "python"
_impl = _pykernels


def available_backends():
    names = ["python"]
    if _ckernels is not None:
        names.append("cython")
    return names


def use_backend(name: str = "auto") -> str:
    """Select the kernel backend ('python', 'cython', or 'auto'); returns it."""
    global _impl, BACKEND
    if name == "auto":
        name = "cython" if (_ckernels is not None and not os.environ.get("WSNSEC_PURE_PYTHON")) else "python"
    if name == "cython":
        if _ckernels is None:
            raise ValueError("compiled kernel backend is not available")
        _impl = _ckernels
    elif name == "python":
        _impl = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    return BACKEND


def _as_c_array(x):
    return np.ascontiguousarray(np.atleast_1d(x), dtype=np.float64)


def outdated_pdf(g, beta, scale, rho, k_max, term_tol):
    res = _impl.outdated_pdf(_as_c_array(g), beta, scale, rho, k_max, term_tol)
    return float(res[0]) if np.ndim(g) == 0 else res


def outdated_cdf(x, beta, scale, rho, k_max, term_tol):
    res = _impl.outdated_cdf(_as_c_array(x), beta, scale, rho, k_max, term_tol)
    return float(res[0]) if np.ndim(x) == 0 else res


def coverage_integrand(g, beta_e, scale_e, rho, k_max, term_tol, beta_s, scale_s, pow2r, gamma_th):
    res = _impl.coverage_integrand(
        _as_c_array(g), beta_e, scale_e, rho, k_max, term_tol, beta_s, scale_s, pow2r, gamma_th
    )
    return float(res[0]) if np.ndim(g) == 0 else res


use_backend("auto")
