"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``GSBC_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("GSBC_PURE_PYTHON"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

walk_tree = _impl.walk_tree
self_index_window = _impl.self_index_window
