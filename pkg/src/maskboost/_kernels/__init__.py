"""Split-search kernels: compiled extension with a pure-numpy fallback.

The backend is chosen once at import time. Set ``MASKBOOST_KERNEL`` to
``cython`` or ``python`` to force a backend (``cython`` raises if the
extension is not built); anything else means "use the extension if
available".

Both backends implement the same contract and produce bit-identical
results (the extension is compiled with FP contraction disabled):

``scan_node_splits(...)``
    Best split per frontier node over its candidate columns.
``partition_segments(...)``
    Stable in-place partition of per-column sorted segments into
    left/right children.
"""
import os

from . import _split_py

_requested = os.environ.get("MASKBOOST_KERNEL", "auto").lower()

if _requested == "python":
    _impl = _split_py
    BACKEND = "python"
else:
    try:
        from . import _split_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        _impl = _split_py
        BACKEND = "python"

scan_node_splits = _impl.scan_node_splits
partition_segments = _impl.partition_segments
