"""Build script: compiles the optional coproduct-matvec extension.

The extension is marked optional; if Cython or a C compiler is missing the
package installs anyway and spintime.kernels falls back to the numpy path.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
    import numpy as np

    ext_modules = cythonize(
        [
            Extension(
                "spintime._coproduct",
                sources=["src/spintime/_coproduct.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_9_API_VERSION")],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
