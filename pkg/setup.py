"""Build script: compiles the mod-p kernel extension when possible.

The extension is an accelerator, not a requirement: if Cython or a C
compiler is missing the install continues and mdverify falls back to the
pure-Python kernel at import time.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler: run pure
            print(f"warning: skipping compiled kernel ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(
                f"warning: could not build {ext.name}; using the pure-Python "
                f"kernel ({exc})",
                file=sys.stderr,
            )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython missing, building without compiled kernel", file=sys.stderr)
        return []
    return cythonize(
        [Extension("mdverify._modp", ["src/mdverify/_modp.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
