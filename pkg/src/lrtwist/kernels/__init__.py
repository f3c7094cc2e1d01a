"""GF(p) search kernels: compiled when the extension is built, numpy otherwise.

Set ``LRTWIST_PURE=1`` to force the numpy backend.
"""
from __future__ import annotations

import os

from . import _pykernels as pure

compiled = None
if os.environ.get("LRTWIST_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled
    except ImportError:
        compiled = None

active = compiled if compiled is not None else pure
BACKEND = active.BACKEND

check_twisting = active.check_twisting
check_qmap = active.check_qmap
check_comb = active.check_comb
scan = active.scan

__all__ = ["BACKEND", "active", "check_comb", "check_qmap", "check_twisting", "compiled", "pure", "scan"]
