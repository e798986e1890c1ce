"""Build script.

The package is pure Python; a small Cython extension (diagres._kernel)
accelerates the polynomial-reduction inner loop.  The extension is strictly
optional: if Cython or a C compiler is missing the build falls through and
the package selects the pure-Python kernel at import time.

Build in place with:  python setup.py build_ext --inplace
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/diagres/_kernel.pyx",
        compiler_directives={"language_level": "3"},
    )
except Exception:
    pass

setup(ext_modules=ext_modules)
