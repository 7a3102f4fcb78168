import os

from setuptools import Extension, setup

# Strict IEEE semantics: the compiled core must stay bit-identical to the
# pure-Python fallback, so no -ffast-math and no FMA contraction.
COMPILE_ARGS = ["-O3", "-ffp-contract=off", "-fno-fast-math"]


def extensions():
    if os.environ.get("BETAFLOW_NO_EXT"):
        return []
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "betaflow._kernels",
        ["src/betaflow/_kernels.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=COMPILE_ARGS,
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions())
