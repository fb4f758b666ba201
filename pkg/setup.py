import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "coapids.kernels._splitcy",
                ["src/coapids/kernels/_splitcy.pyx"],
                include_dirs=[np.get_include()],
                # Contraction off: the numpy fallback must produce bit-identical
                # gains, and FMA fusion would change the low bits.
                extra_compile_args=["-O3", "-ffp-contract=off"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
