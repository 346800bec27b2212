"""Integration kernel backends.

Prefers the compiled extension and falls back to the pure-Python
reference when it is unavailable. Set ``ARGUFACT_PURE_PYTHON=1`` to
force the fallback (used by the parity tests and the benchmark).
"""

import os

from .reference import DFQUAD, EULER, QE
from . import reference

if os.environ.get("ARGUFACT_PURE_PYTHON"):
    _impl = reference
    BACKEND = "python"
else:
    try:
        from . import _rk4 as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = reference
        BACKEND = "python"

integrate = _impl.integrate

__all__ = ["BACKEND", "DFQUAD", "EULER", "QE", "integrate"]
