"""Build hook for the optional compiled series kernel.

The package is pure Python except for one accelerator
(schurbound._series); if Cython or a C compiler is missing the build
proceeds without it and the interpreted fallback is used at runtime.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "schurbound._series",
                ["src/schurbound/_series.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - depends on toolchain
    print(f"building without compiled series kernel: {exc}", file=sys.stderr)

setup(ext_modules=ext_modules)
