"""Hot kernels: compiled extension when built, pure Python otherwise.

Set ``CUE_LAB_PURE_PYTHON=1`` to force the fallback.  ``BACKEND`` names the
implementation in use.
"""

import os

from . import _pykernels

if os.environ.get("CUE_LAB_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

count_tables = _impl.count_tables
poly_mul = _impl.poly_mul
poly_divmod = _impl.poly_divmod


def available_backends():
    """Mapping of backend name to kernel module, for parity tests and benchmarks."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        return out
    out["cython"] = _ckernels
    return out
