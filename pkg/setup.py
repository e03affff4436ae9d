"""Builds the optional Cython speedup kernels.

The package works without the compiled extension (a pure-Python fallback is
selected at import time); building it makes the enumeration-heavy operations
1-2 orders of magnitude faster.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "padiczeros._kernels._speedups",
                ["src/padiczeros/_kernels/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
