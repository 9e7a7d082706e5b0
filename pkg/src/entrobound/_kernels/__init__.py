"""Hot fixed-point kernels: compiled extension with a pure-numpy fallback.

The compiled backend is selected at import when available; set the
environment variable ``ENTROBOUND_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pure

if os.environ.get("ENTROBOUND_PURE_PYTHON"):
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _fast as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

omega_ascent = _impl.omega_ascent
pq_ascent = _impl.pq_ascent

__all__ = ["BACKEND", "omega_ascent", "pq_ascent"]
