import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SELBERGLAB_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("selberglab._kernels", ["src/selberglab/_kernels.pyx"], libraries=["m"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
