"""Build script: compiles the optional integer row-reduction kernel.

The package is pure Python unless Cython is available; a missing compiler or
KOSZUL_NO_EXT=1 yields a wheel that uses the big-integer fallback kernel.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("KOSZUL_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/koszul/_kernel/_bareiss_cy.pyx"],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
