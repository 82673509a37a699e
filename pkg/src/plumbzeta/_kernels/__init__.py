"""Hot subset kernels with a compiled core and a numpy fallback.

The compiled module is used when it imports; set ``PLUMBZETA_PURE_PYTHON=1``
to force the fallback.  ``BACKEND`` names the active implementation.
"""
import os

from . import _pykernels

if os.environ.get("PLUMBZETA_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "numpy"
closure_table = _impl.closure_table
incexc_sums = _impl.incexc_sums


def available_backends() -> dict:
    found = {"numpy": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
