"""Build the optional compiled kernels; the package works without them."""
import sys

from setuptools import setup

# C99 complex multiply otherwise goes through __muldc3 (Inf/NaN recovery),
# which dominates the Jacobi inner loops.
CFLAGS = [] if sys.platform == "win32" else ["-O3", "-fcx-limited-range"]

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "poncelet._ckernels",
                ["src/poncelet/_ckernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=CFLAGS,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
