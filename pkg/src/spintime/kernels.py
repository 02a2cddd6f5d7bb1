"""Kernel selection: compiled extension when available, numpy otherwise."""

from __future__ import annotations

import numpy as np

from . import _coproduct_py

try:
    from . import _coproduct as _compiled
    HAVE_COMPILED = True
except ImportError:  # pragma: no cover - depends on build environment
    _compiled = None
    HAVE_COMPILED = False


def coproduct_matvec(
    cell: np.ndarray,
    x: np.ndarray,
    n_slots: int,
    out: np.ndarray | None = None,
    impl: str = "auto",
) -> np.ndarray:
    """Apply sum_k (I x ... x cell at slot k x ... x I) to a flat vector.

    impl: "auto" (compiled if built), "compiled", or "python".
    """
    dtype = np.result_type(cell.dtype, x.dtype, np.float64)
    x = np.ascontiguousarray(x, dtype=dtype)
    if out is None:
        out = np.zeros_like(x)
    if impl == "compiled" and not HAVE_COMPILED:
        raise RuntimeError("compiled kernel not available")
    use_compiled = HAVE_COMPILED and impl in ("auto", "compiled")
    if use_compiled and dtype in (np.float64, np.complex128):
        cell64 = np.ascontiguousarray(cell, dtype=np.float64)
        _compiled.coproduct_matvec(cell64, x, out, n_slots)
    else:
        _coproduct_py.coproduct_matvec(cell, x, out, n_slots)
    return out
