"""Kernel backend selection.

The hot integer kernels in ``wtap._kernels`` are written once and compiled
with numba's ``@njit`` when available.  Setting the environment variable
``WTAP_NUMBA=0`` (before the package is imported) selects the pure-Python
fallback, which runs the identical code uncompiled on the same numpy arrays.
"""

from __future__ import annotations

import os


def _flag_enabled() -> bool:
    value = os.environ.get("WTAP_NUMBA", "1").strip().lower()
    return value not in ("0", "false", "off", "no")


NUMBA_REQUESTED = _flag_enabled()
NUMBA_AVAILABLE = False

if NUMBA_REQUESTED:
    try:
        from numba import njit as _njit

        NUMBA_AVAILABLE = True
    except ImportError:
        _njit = None

USE_NUMBA = NUMBA_REQUESTED and NUMBA_AVAILABLE


def maybe_njit(func):
    """Compile ``func`` with numba when enabled, else return it unchanged."""
    if USE_NUMBA:
        return _njit(cache=True)(func)
    return func


def backend_name() -> str:
    return "numba" if USE_NUMBA else "python"
