"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``TOPTAUT_PURE=1`` to force the fallback.
"""
import os

if os.environ.get("TOPTAUT_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
combine = _impl.combine
primitive = _impl.primitive
reduce_row = _impl.reduce_row
poly_mul = _impl.poly_mul
