import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DIVFORGE_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("divforge._dhar", ["src/divforge/_dhar.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
