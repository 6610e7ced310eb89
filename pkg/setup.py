from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "prym_atlas._kernels",
        ["src/prym_atlas/_kernels.pyx"],
        extra_compile_args=["-O3"],
    ),
]

setup(ext_modules=cythonize(extensions, language_level="3"))
