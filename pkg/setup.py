"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure numpy twin is selected at
import time), so the extension is marked optional and a failed compile only
downgrades performance.
"""

from setuptools import setup, Extension

ext_modules = []
try:
    from Cython.Build import cythonize

    ext = Extension(
        "abflux._kernels._core",
        ["src/abflux/_kernels/_core.pyx"],
        extra_compile_args=["-O3"],
    )
    ext.optional = True
    ext_modules = cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
