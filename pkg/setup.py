"""Build script: compiles the optional Cython kernels.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile degrades gracefully to a pure-Python
install.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "polyflow._kernels",
                ["src/polyflow/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
