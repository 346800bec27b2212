"""Builds the optional compiled solver kernel.

The extension is marked optional: if no C toolchain (or Cython) is
available the install still succeeds and the package falls back to the
pure-Python kernel at import time.
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
                "argufact._kernels._rk4",
                sources=["src/argufact/_kernels/_rk4.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
