"""Build script: compiles the quantifier-sweep kernel when a toolchain is available.

The package is fully functional without the extension; latlab.engine falls
back to the pure-Python interpreter at import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Let the install proceed if the extension cannot be compiled."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any toolchain failure is non-fatal
            print(f"warning: skipping compiled kernel ({exc}); pure-Python backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc}); pure-Python backend will be used")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; pure-Python backend will be used")
        return []
    return cythonize(
        [Extension("latlab.engine._speed", ["src/latlab/engine/_speed.pyx"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
