import os

from setuptools import setup

# The compiled term-arithmetic kernel is an optional accelerator: the package
# falls back to src/ptolemy_lab/_termkernel_py.py when the extension is
# missing.  Set PTOLEMY_LAB_NO_EXTENSION=1 to skip building it.
ext_modules = []
if os.environ.get("PTOLEMY_LAB_NO_EXTENSION", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/ptolemy_lab/_termkernel.pyx"],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
