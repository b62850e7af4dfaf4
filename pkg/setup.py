"""Build script for the optional compiled kernels.

The package works without the extension (a numpy fallback is selected at
import time), so a failed or skipped build must not fail the install.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from setuptools import Extension
    from Cython.Build import cythonize

    ext = Extension(
        "lanekg.kge.backends._ckernels",
        ["src/lanekg/kge/backends/_ckernels.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    ext.optional = True
    ext_modules = cythonize([ext], language_level=3)
except ImportError:
    pass

setup(ext_modules=ext_modules)
