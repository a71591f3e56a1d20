"""Build script: compiles the optional C lookup kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so a failed extension build only prints a warning.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler and friends
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "warning: building the C lookup kernel failed (%s); "
            "falling back to the pure-Python kernel" % (exc,),
            file=sys.stderr,
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; skipping C lookup kernel", file=sys.stderr)
        return []
    return cythonize(
        [Extension("fstmorph.kernels._clookup", ["src/fstmorph/kernels/_clookup.pyx"])],
        language_level="3",
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
