"""Kernel backend selection.

Prefers the compiled extension and falls back to the pure-numpy kernels.
Set ``TOPODIST_BACKEND=compiled`` or ``=pure`` to force one (the forced
compiled backend raises if the extension is missing).
"""

import os

from . import _dp_py

_forced = os.environ.get("TOPODIST_BACKEND", "").strip().lower()

if _forced == "pure":
    kernels = _dp_py
elif _forced == "compiled":
    from . import _dp as kernels
elif _forced:
    raise ValueError(f"unknown TOPODIST_BACKEND {_forced!r}; use 'compiled' or 'pure'")
else:
    try:
        from . import _dp as kernels
    except ImportError:
        kernels = _dp_py

BACKEND = kernels.BACKEND_NAME
