from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("latrec._kernel", ["src/latrec/_kernel.pyx"])],
        language_level=3,
    )
except ImportError:
    # The compiled kernel is optional; latrec.kernel falls back to the
    # pure-Python implementation when the extension is missing.
    ext_modules = []

setup(ext_modules=ext_modules)
