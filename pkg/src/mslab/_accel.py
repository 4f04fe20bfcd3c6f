"""Backend selection for the hot numeric kernels.

Kernels are compiled with numba when it is importable and the environment
variable ``MSLAB_DISABLE_NUMBA`` is unset (or ``0``).  Otherwise every kernel
falls back to its pure-numpy twin in :mod:`mslab._kernels`.

``MSLAB_THREADS`` caps the numba thread pool.  Reductions never depend on the
thread count: parallel loops only run over independent output slots.
"""
import os

_flag = os.environ.get("MSLAB_DISABLE_NUMBA", "0").strip().lower()
USE_NUMBA = _flag in ("", "0", "false", "no")

if USE_NUMBA:
    try:
        import numba
        from numba import njit, prange

        if "NUMBA_THREADING_LAYER" not in os.environ:
            numba.config.THREADING_LAYER = "omp"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

if not USE_NUMBA:
    prange = range

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


def backend_name():
    return "numba" if USE_NUMBA else "numpy"


def apply_thread_cap(n=None):
    """Cap the numba thread pool at ``n`` (default: ``$MSLAB_THREADS``)."""
    if n is None:
        raw = os.environ.get("MSLAB_THREADS")
        if not raw:
            return None
        n = int(raw)
    if n < 1:
        raise ValueError("thread count must be >= 1")
    if not USE_NUMBA:
        return 1
    n = min(n, numba.config.NUMBA_NUM_THREADS)
    numba.set_num_threads(n)
    return n
