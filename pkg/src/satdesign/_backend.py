"""Kernel backend selection.

The hot loops (batched fraction-free determinants, exhaustive enumeration,
flip hill-climbing) exist twice: numba ``@njit`` kernels and pure-numpy
equivalents. ``SATDESIGN_BACKEND=numpy`` forces the numpy path; the default
is numba when it imports, numpy otherwise. Both paths return identical
results for identical inputs.
"""

import os
import warnings

BACKEND_ENV = "SATDESIGN_BACKEND"
_CHOICES = ("numba", "numpy")


def _select() -> str:
    requested = os.environ.get(BACKEND_ENV, "numba").strip().lower() or "numba"
    if requested not in _CHOICES:
        raise ValueError(f"{BACKEND_ENV} must be one of {_CHOICES}, got {requested!r}")
    if requested == "numba":
        try:
            import numba  # noqa: F401
        except ImportError:
            warnings.warn("numba not importable, using numpy kernels", RuntimeWarning)
            return "numpy"
    return requested


BACKEND = _select()
