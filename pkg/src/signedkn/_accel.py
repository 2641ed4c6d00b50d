"""Optional numba acceleration.

Hot loops (the Jacobi solver, the mass Prufer sweep) are written as
numba-compatible functions.  When numba is unavailable the decorator
degrades to a no-op and the same code runs as plain Python, just slower.
"""

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


__all__ = ["njit", "HAVE_NUMBA"]
