"""Builds the ecm Python extension by driving the project's CMake tree."""

import pathlib
import subprocess
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = pathlib.Path(__file__).parent.resolve()
        build_dir = pathlib.Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)

        out_dir = pathlib.Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        out_dir.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DECM_BUILD_PYTHON=ON",
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPYTHON_EXECUTABLE_HINT={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(["cmake", "--build", str(build_dir), "--target", "_ecm", "-j"], check=True)

        staged = build_dir / "python" / "ecm"
        for artifact in staged.iterdir():
            (out_dir / artifact.name).write_bytes(artifact.read_bytes())


setup(
    packages=["ecm"],
    package_dir={"ecm": "python/ecm"},
    ext_modules=[CMakeExtension("ecm._ecm")],
    cmdclass={"build_ext": CMakeBuild},
)
