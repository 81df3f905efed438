"""Kernel selection: compiled LLL core when built, pure Python otherwise.

Set LATREC_PURE=1 to force the pure-Python kernel (used by the parity tests
and the benchmark).  `backend_name()` reports which one is active.
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("LATREC_PURE"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

lll_reduce_int = _impl.lll_reduce_int


def backend_name() -> str:
    return "compiled" if _impl.__name__.endswith("._kernel") else "pure-python"
