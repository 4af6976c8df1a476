"""Kernel backend selection.

The convolution/pooling inner loops exist twice: a Cython extension
(built at install time) and a numpy fallback. The extension is used
when importable; set DISAMBIG_KERNELS=python or =cython to force one.
Within a process the choice is fixed at import time.
"""

from __future__ import annotations

import os

from . import _pykernels

_forced = os.environ.get("DISAMBIG_KERNELS", "").strip().lower()

if _forced == "python":
    _ckernels = None
else:
    try:
        from . import _ckernels
    except ImportError:
        if _forced == "cython":
            raise ImportError(
                "DISAMBIG_KERNELS=cython but the compiled extension is not "
                "available; reinstall with a C compiler present")
        _ckernels = None

_active = _ckernels if _ckernels is not None else _pykernels

BACKEND = "cython" if _ckernels is not None else "python"

conv2d_forward = _active.conv2d_forward
conv2d_backward = _active.conv2d_backward
maxpool2_forward = _active.maxpool2_forward
maxpool2_backward = _active.maxpool2_backward


def backend_name() -> str:
    return BACKEND


def available_backends() -> dict[str, object]:
    """Module namespace per importable backend (for tests/benchmarks)."""
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    return out
