"""Backend switch for the compiled kernels.

Set ``XILAB_DISABLE_NUMBA=1`` to force the pure-numpy implementations.
"""
import os

_FLAG = os.environ.get("XILAB_DISABLE_NUMBA", "").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and _FLAG not in ("1", "true", "yes", "on")


def njit(fn):
    """Compile ``fn`` with numba when available, otherwise return None."""
    if not NUMBA_AVAILABLE:
        return None
    return numba.njit(cache=True, fastmath=False)(fn)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
