import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LANKE_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:  # pure-Python install; the fallback kernel is used
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "lanke.linalg._modrank",
                    ["src/lanke/linalg/_modrank.pyx"],
                    language="c++",
                    extra_compile_args=["-O3", "-std=c++11"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
