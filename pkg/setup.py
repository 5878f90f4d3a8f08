"""Build script.

The compiled kernel extension is optional: when Cython (and a C compiler)
are available the hot loops run from charsum.kernels._fast, otherwise the
package falls back to the NumPy reference implementation at import time.

Build in place with:  python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "charsum.kernels._fast",
                ["src/charsum/kernels/_fast.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
