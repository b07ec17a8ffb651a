"""Select numba or the pure-numpy path for the hot kernels.

Set ``MU_CERT_DISABLE_NUMBA=1`` to force the numpy fallback.
"""
import os

_DISABLED = os.environ.get("MU_CERT_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` when available, else return the function unchanged."""
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)
    if args and callable(args[0]):
        return args[0]
    return lambda fn: fn


def thread_cap(default=1):
    raw = os.environ.get("MU_CERT_THREADS")
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default
