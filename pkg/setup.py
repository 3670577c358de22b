"""Build script for the optional compiled eigensolver core.

The package is fully functional without the extension: ``nlcavity.kernels``
falls back to a vectorized numpy implementation when ``nlcavity._jacobi``
is missing. The extension is built from the pregenerated C file so that a
plain C compiler suffices; Cython is only needed to regenerate it after
editing ``_jacobi.pyx``.
"""

import warnings
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

HERE = Path(__file__).parent
PYX = HERE / "src" / "nlcavity" / "_jacobi.pyx"
C_SRC = HERE / "src" / "nlcavity" / "_jacobi.c"


def extension_modules():
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None and PYX.exists():
        return cythonize(
            [Extension("nlcavity._jacobi", ["src/nlcavity/_jacobi.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    if C_SRC.exists():
        return [Extension("nlcavity._jacobi", ["src/nlcavity/_jacobi.c"])]
    warnings.warn("no Cython and no pregenerated _jacobi.c; installing pure-python build")
    return []


class OptionalBuildExt(build_ext):
    """Degrade to the pure-python backend if compilation fails."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain, ...
            warnings.warn(f"compiled core skipped ({exc}); using pure-python backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled core skipped ({exc}); using pure-python backend")


setup(ext_modules=extension_modules(), cmdclass={"build_ext": OptionalBuildExt})
