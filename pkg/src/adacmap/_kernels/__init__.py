"""Kernel selection: compiled extension when built, pure Python otherwise.

Set ``ADACMAP_PURE_PYTHON=1`` to force the fallback (used by the kernel
parity tests and the benchmark).
"""

from __future__ import annotations

import os

from .swap_search_py import BUDGET_EXHAUSTED, FOUND, NO_SOLUTION
from . import swap_search_py as _py_impl

if os.environ.get("ADACMAP_PURE_PYTHON") == "1":
    _impl = _py_impl
else:
    try:
        from . import _swap_search as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _py_impl

swap_search = _impl.swap_search
swap_search_py = _py_impl.swap_search
ACTIVE_IMPL: str = _impl.IMPL

__all__ = [
    "swap_search",
    "swap_search_py",
    "FOUND",
    "NO_SOLUTION",
    "BUDGET_EXHAUSTED",
    "ACTIVE_IMPL",
]
