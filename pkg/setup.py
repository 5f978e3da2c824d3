"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so the extension is marked optional and any build
failure is non-fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "mirabolic._kernels._fast",
                sources=["src/mirabolic/_kernels/_fast.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
