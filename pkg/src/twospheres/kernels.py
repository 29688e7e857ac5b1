"""Backend selection for the Lloyd hot loop.

The compiled extension is used when it was built; setting
``TWOSPHERES_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

from . import _pykernels

if os.environ.get("TWOSPHERES_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"
assign_accumulate = _impl.assign_accumulate
cluster_sse = _impl.cluster_sse
