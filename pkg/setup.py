import os

from setuptools import setup

ext_modules = []
if not os.environ.get("HARRISAR_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "harrisar._kernels",
                    ["src/harrisar/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # numpy fallback in harrisar._kernels_py is used instead
        ext_modules = []

setup(ext_modules=ext_modules)
