"""Backend selection for the exponential kernels.

The compiled extension is used when it imports; otherwise the pure-Python
twin. Set ``TWSEP_PURE_PYTHON=1`` to force the fallback. Both backends return
identical values and witnesses.
"""

import os

from twsep import _pykernels

if os.environ.get("TWSEP_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from twsep import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

tw_order = _impl.tw_order
cutwidth_order = _impl.cutwidth_order
vsn_order = _impl.vsn_order
sumcut_order = _impl.sumcut_order
cutsize_search = _impl.cutsize_search
bsep_search = _impl.bsep_search
sn_search = _impl.sn_search


def backends():
    """Map of available backend name -> kernel module."""
    out = {"python": _pykernels}
    try:
        from twsep import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
