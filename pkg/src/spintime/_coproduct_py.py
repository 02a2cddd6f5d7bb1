"""Pure numpy fallback for the coproduct matvec kernel."""

from __future__ import annotations

import numpy as np


def coproduct_matvec(cell: np.ndarray, x: np.ndarray, y: np.ndarray, n_slots: int) -> None:
    """y += sum over slots of the slot-local cell action on x.  In place.

    Reshapes x to (left, d, right) per slot and contracts the middle index.
    """
    d = cell.shape[0]
    total = x.shape[0]
    if y.shape[0] != total:
        raise ValueError("output size mismatch")
    cell = cell.astype(y.dtype, copy=False)
    right = d ** (n_slots - 1)
    for _ in range(n_slots):
        left = total // (d * right)
        xv = x.reshape(left, d, right)
        y += np.einsum("ij,ljr->lir", cell, xv).reshape(total)
        right //= d
        if right == 0:
            break
