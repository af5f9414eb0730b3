"""Build the optional compiled benchmark kernels.

The extension is optional: when Cython or a C++ compiler is missing the
package installs without it and falls back to the pure-Python kernels.
"""
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# -ffp-contract=off keeps the accumulation bitwise equal to the Python kernels.
COMPILE_ARGS = ["-std=c++17", "-O3", "-funroll-loops", "-ffp-contract=off"]


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernels not built ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc})", file=sys.stderr)


ext_modules = []
if cythonize is not None:
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "gridfunc.bench._ckernels",
                ["src/gridfunc/bench/_ckernels.pyx"],
                language="c++",
                extra_compile_args=COMPILE_ARGS,
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
