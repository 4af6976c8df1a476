"""Build script: compiles the Cython kernel extension when possible.

The extension is an optional speedup; if Cython or a C compiler is
missing (or DISAMBIG_NO_EXT is set), the package installs anyway and
falls back to the numpy kernels at import time.
"""

import os

from setuptools import Extension, setup


def _extensions():
    if os.environ.get("DISAMBIG_NO_EXT"):
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "disambig.backend._ckernels",
        sources=["src/disambig/backend/_ckernels.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=_extensions())
