"""Build script for the compiled search kernel.

The package works without the extension (a pure-Python fallback is selected
at import time), but collision searches above ~24 truncation bits are only
practical with the compiled kernel.  Build in place with:

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "collidelab._kernel",
        ["src/collidelab/_kernel.pyx"],
        extra_compile_args=["-O3", "-funroll-loops", "-march=native"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    ),
)
