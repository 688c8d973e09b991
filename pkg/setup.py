"""Build script: compiles the optional Cython kernel core.

The package works without the extension (a pure-Python kernel module is
selected at import time), so a missing compiler or missing Cython only
costs speed, never functionality.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Skip the extension instead of failing the whole install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: compiled kernels skipped ({exc}); "
                  "falling back to pure-Python kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "falling back to pure-Python kernels")


try:
    import os

    from Cython.Build import cythonize

    if os.path.exists("src/barnesg/_ckernels.pyx"):
        extensions = cythonize(
            [
                Extension(
                    "barnesg._ckernels",
                    ["src/barnesg/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    else:
        extensions = []
except ImportError:
    print("warning: Cython not available; installing pure-Python kernels only")
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
