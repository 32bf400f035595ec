import os

from setuptools import Extension, setup

# The compiled kernels are optional: twsep falls back to pure Python when
# the extension is missing, so a failed build must not fail the install.
try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("TWSEP_NO_EXT"):
    extension = Extension(
        "twsep._ckernels",
        ["src/twsep/_ckernels.pyx"],
        extra_compile_args=["-O3"],
        optional=True,
    )
    try:
        ext_modules = cythonize([extension], compiler_directives={"language_level": "3"})
    except Exception as exc:
        print(f"twsep: skipping compiled kernels ({exc})")

setup(ext_modules=ext_modules)
