"""Build script for the optional compiled kernels.

If Cython or a C compiler is missing the package still installs and the
pure-Python kernels are used.
"""
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernels not built ({exc}); using pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: building {ext.name} failed ({exc}); using pure Python")


try:
    from Cython.Build import cythonize

    EXT_MODULES = cythonize(
        [Extension("toricprequant._kernels", ["src/toricprequant/_kernels.pyx"])],
        compiler_directives={"language_level": "3", "embedsignature": True},
    )
except ImportError:
    EXT_MODULES = []

setup(ext_modules=EXT_MODULES, cmdclass={"build_ext": optional_build_ext})
