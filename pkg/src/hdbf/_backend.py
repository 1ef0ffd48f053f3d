"""Pick the kernel implementation once, at import time.

The compiled ``_kernels`` extension is preferred. Setting the environment
variable ``HDBF_PURE_PYTHON=1`` forces the pure-Python fallback, which is also
used whenever the extension was not built.
"""
import os

if os.environ.get("HDBF_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _kernels_py as kernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels
        BACKEND = "python"

__all__ = ["BACKEND", "kernels"]
