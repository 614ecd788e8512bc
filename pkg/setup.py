"""Build hook for the optional Cython kernels.

Everything else is configured in pyproject.toml.  When Cython or a C
compiler is missing the extension is skipped and ``fourfold.kernels``
falls back to the pure-Python implementation.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build without Cython
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("fourfold._ckernels", ["src/fourfold/_ckernels.pyx"], optional=True)],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )

setup(ext_modules=ext_modules)
