"""Build hooks for the optional compiled kernel core.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so any build failure here downgrades to a warning
instead of aborting the install.
"""

import warnings

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "wsnsec._kernels._ckernels",
                ["src/wsnsec/_kernels/_ckernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # no Cython/compiler: pure-python install
    warnings.warn(f"compiled kernels skipped ({exc}); using pure-python backend")

setup(ext_modules=ext_modules)
