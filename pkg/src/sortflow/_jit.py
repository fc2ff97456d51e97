"""Kernel compilation switch.

Hot kernels are written as plain Python functions over contiguous int64
numpy arrays and compiled with numba's ``@njit`` when it is available.
Setting the environment variable ``SORTFLOW_NUMBA=0`` (or ``false``/``no``/
``off``) before import selects the pure-Python fallback instead; both paths
execute the exact same source, so results are bit-identical.
"""

import os

__all__ = ["JIT_ENABLED", "BACKEND", "jit_kernel"]


def _numba_disabled() -> bool:
    value = os.environ.get("SORTFLOW_NUMBA", "").strip().lower()
    return value in {"0", "false", "no", "off"}


if _numba_disabled():
    _njit = None
else:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _njit = None

JIT_ENABLED = _njit is not None
BACKEND = "numba" if JIT_ENABLED else "python"


def jit_kernel(func):
    """Compile ``func`` with numba when enabled, else return it unchanged."""
    if JIT_ENABLED:
        return _njit(cache=True)(func)
    return func
