"""Build script: compiles the optional fast kernels extension.

The package works without the extension (a pure numpy backend is selected
at import time), so a failed compile only costs speed, not correctness.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("NUCRANGE_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/nucrange/_kernels/_fast.pyx"],
            language_level=3,
        )
    except Exception as exc:  # pragma: no cover - build-env dependent
        print(f"nucrange: skipping fast kernels ({exc}); pure backend will be used")

setup(ext_modules=ext_modules)
