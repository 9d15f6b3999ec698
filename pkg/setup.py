import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Skip the compiled kernel when no compiler is available; the package falls back to pure Python."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"warning: building hkcalc._gf2ext failed ({exc}); using pure-Python kernels",
                  file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); using pure-Python kernels",
                  file=sys.stderr)


def extensions():
    if os.environ.get("HKCALC_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension("hkcalc._gf2ext", ["src/hkcalc/_gf2ext.pyx"], extra_compile_args=["-O3"])
    return cythonize([ext], compiler_directives={"language_level": 3})


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
