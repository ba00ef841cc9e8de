import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SPARSEROOTS_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "sparseroots._kernels._fixed",
                    ["src/sparseroots/_kernels/_fixed.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
