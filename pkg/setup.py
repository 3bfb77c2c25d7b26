"""Build script for the optional compiled kernel extension.

The extension is marked optional: if the build fails (no compiler, no
Cython), the package still installs and falls back to the pure-NumPy
kernels at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "catvortex._kernels_cy",
                ["src/catvortex/_kernels_cy.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
