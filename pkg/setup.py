"""Build the optional compiled Jacobi kernel.

The package works without it: ``telemix.numerics`` falls back to the
pure-Python kernel when the extension cannot be imported.
"""
import warnings

from setuptools import setup


def _extensions():
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ModuleNotFoundError:
        warnings.warn("cython/numpy unavailable; building pure-Python telemix only")
        return []
    ext = Extension(
        "telemix._jacobi",
        ["src/telemix/_jacobi.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=_extensions())
