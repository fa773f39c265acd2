"""Build script for the optional compiled core.

The compiled extension only accelerates the partition-sweep loops; the
package is fully functional without it (a pure Python implementation is
selected at import time).  If no C compiler is available the build falls
back to a pure Python install instead of failing.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that degrades to a pure Python install on compiler errors."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"compiled core skipped ({exc}); using pure Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled core skipped ({exc}); using pure Python fallback")


def make_extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "pfapart._measure_core",
        ["src/pfapart/_measure_core.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


setup(
    ext_modules=make_extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
