"""Numba switch.

Set ``FRIR_DISABLE_NUMBA=1`` to force the pure-numpy kernels; numba is also
skipped silently when it cannot be imported.
"""

from __future__ import annotations

import os

_DISABLED = os.environ.get("FRIR_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError
    import numba
except ImportError:  # pragma: no cover - depends on environment
    numba = None

NUMBA_ENABLED = numba is not None


def njit(fn):
    """``numba.njit(cache=True)`` when available, identity otherwise."""
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)


def default_backend() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
