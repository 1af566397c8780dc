"""Hot-kernel backend selection.

Imports the compiled Cython extension when present, otherwise the numpy
fallback. REMEDYRANK_FORCE_FALLBACK=1 forces the fallback even when the
extension is built (used by the benchmark and the equivalence tests).
"""

from __future__ import annotations

import logging
import os

from . import fallback as _fallback

logger = logging.getLogger(__name__)

try:
    from . import _fast as _compiled
except ImportError:
    _compiled = None

if os.environ.get("REMEDYRANK_FORCE_FALLBACK"):
    _impl = _fallback
elif _compiled is not None:
    _impl = _compiled
else:
    _impl = _fallback
    logger.info("compiled kernels unavailable; using the numpy fallback")

BACKEND = _impl.BACKEND_NAME
jacobi_sweeps = _impl.jacobi_sweeps
bm25_transform = _impl.bm25_transform


def available_backends() -> list[str]:
    names = ["fallback"]
    if _compiled is not None:
        names.insert(0, "compiled")
    return names


def get_backend(name: str):
    """Return a specific backend module ("compiled" or "fallback")."""
    if name == "fallback":
        return _fallback
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")
