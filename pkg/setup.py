"""Build script for the compiled Monte Carlo kernels.

The package works without the extension (a numpy fallback is selected at
import time), but the compiled kernels are considerably faster for the
event-loop heavy renewal simulations. See benchmarks/bench_kernels.py.
"""

import numpy as np
from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "trendvar._kernels._core",
        ["src/trendvar/_kernels/_core.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
