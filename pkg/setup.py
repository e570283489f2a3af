from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:  # no Cython: ship the pure-Python kernels only
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("orlicz_cosine._kernels", ["src/orlicz_cosine/_kernels.pyx"],
                   extra_compile_args=["-O2", "-ffp-contract=off"], optional=True)],
        language_level=3)

setup(ext_modules=ext_modules)
