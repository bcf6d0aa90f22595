import sys

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "diasil.fdtd._kernels",
                ["src/diasil/fdtd/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3", "-fno-math-errno"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    # The package works without the compiled core (pure-numpy fallback is
    # selected at import time), so a missing compiler must not break install.
    sys.stderr.write(f"warning: building without compiled FDTD core ({exc})\n")
    ext_modules = []

setup(ext_modules=ext_modules)
