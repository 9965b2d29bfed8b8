from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("stindex._kernels", ["src/stindex/_kernels.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "cdivision": True,
        },
    )
except ImportError:
    # pure-Python fallback is selected at import time; the extension is optional
    ext_modules = []

setup(ext_modules=ext_modules)
