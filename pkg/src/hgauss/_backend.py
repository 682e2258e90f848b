"""Kernel backend selection.

The compiled module is used when it imports; otherwise the pure-Python
twin.  Setting ``HGAUSS_PURE_PYTHON=1`` forces the fallback.
"""
import os

if os.environ.get("HGAUSS_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels_c as kernels

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
