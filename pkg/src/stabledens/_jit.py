"""Optional numba acceleration.

Kernels are written once in plain Python/numpy and decorated with :func:`kernel`.
When numba is importable and ``STABLE_DENSITY_DISABLE_JIT`` is unset (or ``0``),
the decorator compiles them with ``numba.njit``; otherwise the functions run
as ordinary Python. The choice is made once, at import time.
"""

import os

_FLAG = os.environ.get("STABLE_DENSITY_DISABLE_JIT", "0").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    import numba

    JIT_ENABLED = True
except ImportError:
    numba = None
    JIT_ENABLED = False


def kernel(fn):
    """Compile ``fn`` in nopython mode when the JIT path is active."""
    if JIT_ENABLED:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def backend_name() -> str:
    return "numba" if JIT_ENABLED else "python"
