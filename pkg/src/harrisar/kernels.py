"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the numpy
fallback is used. Set ``HARRISAR_PURE_PYTHON=1`` to force the fallback.
"""
import os

from harrisar import _kernels_py

if os.environ.get("HARRISAR_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from harrisar import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

OP_ADD = _kernels_py.OP_ADD
OP_MAX = _kernels_py.OP_MAX
OP_MIN = _kernels_py.OP_MIN

ar_recursion = _impl.ar_recursion
truncated_convolve = _impl.truncated_convolve
solve_log_periodic = _impl.solve_log_periodic

__all__ = [
    "BACKEND",
    "OP_ADD",
    "OP_MAX",
    "OP_MIN",
    "ar_recursion",
    "truncated_convolve",
    "solve_log_periodic",
]
