import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("EDGEDEPTH_NO_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("edgedepth._core._kernels", ["src/edgedepth/_core/_kernels.pyx"])],
        language_level="3",
    )

setup(ext_modules=ext_modules)
