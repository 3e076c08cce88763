"""Builds the optional compiled split-search kernel.

The package works without the extension (a numpy fallback is selected at
import time), so a failed build only costs speed.
"""
import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "maskboost._kernels._split_cy",
        ["src/maskboost/_kernels/_split_cy.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        # -ffp-contract=off keeps the compiled kernel bit-for-bit equal to
        # the numpy fallback (no FMA contraction of a*b+c).
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    ext_modules = cythonize([ext], language_level="3")

setup(ext_modules=ext_modules)
