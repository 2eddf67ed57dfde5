import os

from setuptools import Extension, setup

# The compiled kernel is optional: if Cython (or a C compiler) is missing the
# package falls back to the pure-Python kernel at import time.
ext_modules = []
if os.environ.get("TREELIE_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "treelie._kernel_c",
                    ["src/treelie/_kernel_c.pyx"],
                    optional=True,
                )
            ],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
