"""Select the numeric core: compiled extension if importable, else the pure-Python twin."""

import os

from . import _fallback

if os.environ.get("BETAFLOW_PURE"):
    core = _fallback
    COMPILED = False
else:
    try:
        from . import _kernels as core
        COMPILED = True
    except ImportError:  # extension not built
        core = _fallback
        COMPILED = False

__all__ = ["core", "COMPILED"]
