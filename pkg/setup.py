"""Builds the optional compiled window kernel.

python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # fallback backend is selected at import time
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "grasscycle._windows",
                ["src/grasscycle/_windows.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
