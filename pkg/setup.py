"""Build script: compiles the branch-and-bound core when Cython and a C
compiler are available, and degrades to the pure-Python kernel otherwise.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/epgdom/_domcore.pyx"],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
