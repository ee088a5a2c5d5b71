from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    extensions = cythonize(
        [Extension("sqcat._cellkernel", ["src/sqcat/_cellkernel.pyx"])],
        language_level="3",
    )
except ImportError:
    # The package runs on the pure-Python kernel when Cython is missing.
    extensions = []

setup(ext_modules=extensions)
