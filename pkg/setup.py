"""Build script.

The compiled kernel module is optional: when Cython or a C compiler is
missing, the package installs without it and falls back to the numpy
implementation at import time.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "orbivol._kernels._cykernels",
                ["src/orbivol/_kernels/_cykernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError as exc:
    sys.stderr.write(f"orbivol: building without compiled kernels ({exc})\n")

setup(ext_modules=ext_modules)
