"""Select the hot-kernel backend at import.

The compiled extension is preferred; set ``FORTS_PURE_PYTHON=1`` to force the
pure-Python fallback (both expose the same functions).
"""

from __future__ import annotations

import os

if os.environ.get("FORTS_PURE_PYTHON"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        from . import _pykernels as _impl

BACKEND: str = _impl.BACKEND
count_tree_forts = _impl.count_tree_forts
count_forts_levels = _impl.count_forts_levels
free_tree_chunks = _impl.free_tree_chunks
free_tree_levels = _impl.free_tree_levels
levels_to_masks = _impl.levels_to_masks


def available_backends() -> dict:
    """Every importable backend module keyed by name; used by tests and the benchmark."""
    from . import _pykernels

    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
