"""Build the optional cycle-enumeration extension; fall back to pure
Python (gdecomp._cycles_py) when Cython or a compiler is missing."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/gdecomp/_cycles.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
