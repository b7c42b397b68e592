"""Optional numba acceleration.

The numeric kernels are written in the subset of Python that numba's
``nopython`` mode accepts.  Setting ``MARCUMQ_DISABLE_NUMBA=1`` (or running
without numba installed) leaves them as plain Python functions; results are
identical up to floating-point contraction differences.
"""

import os

_FLAG = os.environ.get("MARCUMQ_DISABLE_NUMBA", "").strip().lower()
DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    if DISABLED:
        raise ImportError
    from numba import njit as _njit

    USING_NUMBA = True
except ImportError:
    _njit = None
    USING_NUMBA = False


def njit(*args, **kwargs):
    """``numba.njit`` with caching, or the identity decorator."""
    if not USING_NUMBA:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f
    kwargs.setdefault("cache", True)
    return _njit(*args, **kwargs)
