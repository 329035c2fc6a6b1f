"""Backend selection for the order search.

The compiled kernel is used when it was built; ``STICKKIT_PURE=1`` forces the
pure-Python fallback.
"""
import os

from . import _pysearch

COMPLETE = _pysearch.COMPLETE
STOPPED = _pysearch.STOPPED
EXHAUSTED = _pysearch.EXHAUSTED
KIND_ANY = _pysearch.KIND_ANY
KIND_A = _pysearch.KIND_A
KIND_B = _pysearch.KIND_B

BACKENDS = {"python": _pysearch.dfs}
try:
    from ._csearch import dfs as _cdfs
except ImportError:  # extension not built
    _cdfs = None
else:
    BACKENDS["cython"] = _cdfs

if _cdfs is not None and not os.environ.get("STICKKIT_PURE"):
    BACKEND = "cython"
else:
    BACKEND = "python"


def get_dfs(backend=None):
    name = backend or BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"search backend {name!r} unavailable (have {sorted(BACKENDS)})") from None
