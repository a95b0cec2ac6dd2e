"""Build script for the optional compiled search kernel.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time), so the build degrades gracefully
when Cython or a C toolchain is unavailable.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "plausible._kernel",
                sources=["src/plausible/_kernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
