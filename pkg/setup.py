"""Builds the optional compiled search kernel.

If Cython or a C compiler is missing the package still installs and runs on
the pure-Python kernel.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SANDWICH_CSP_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "sandwich_csp._kernels",
                    ["src/sandwich_csp/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover - build environment dependent
        print(f"warning: building without the compiled kernel ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
