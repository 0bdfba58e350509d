"""Build script: compiles the optional Cython kernel when possible.

The package is fully functional without the extension; `cechtower._kernels`
falls back to the pure-Python twin at import time.  Set CECHTOWER_PURE=1 to
skip the extension build entirely.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("CECHTOWER_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/cechtower/_snf_cy.pyx"],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
