"""Build script: compiles the optional Cython swap-search kernel.

The package works without the extension (a pure-Python twin of the kernel
is selected at import time), so a failed compile only costs speed.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "adacmap._kernels._swap_search",
                ["src/adacmap/_kernels/_swap_search.pyx"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"adacmap: skipping Cython kernel build ({exc}); "
          "pure-Python fallback will be used")

setup(ext_modules=ext_modules)
