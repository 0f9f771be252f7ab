"""Kernel backend selection.

Prefers the compiled extension; falls back to the numpy implementation.
Set ``POLYFLOW_BACKEND=python`` to force the fallback (used by the
backend benchmark and for debugging).
"""

from __future__ import annotations

import os

if os.environ.get("POLYFLOW_BACKEND", "").lower() == "python":
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

flow_rhs = _impl.flow_rhs
weierstrass_step = _impl.weierstrass_step
