"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. Setting ``FTLOCAL_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("FTLOCAL_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

run_netlist = _impl.run_netlist
min_weight = _impl.min_weight

__all__ = ["BACKEND", "run_netlist", "min_weight"]
