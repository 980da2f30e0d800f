import os

import numpy
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("KWISING_NO_EXT", "") != "1":
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("kwising._kernels", ["src/kwising/_kernels.pyx"], include_dirs=[numpy.get_include()])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
