# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for the coproduct matvec.

Applies y += sum_k (I x ... x cell x ... x I) x over all n_slots slot
positions, for a dense d x d cell matrix and a flat vector of length
d**n_slots.  This is the hot inner loop of every large-N experiment.

The loop order streams contiguous runs of length `right` and skips zero
cell entries, which matters a lot for the signed-permutation bivector
cells (8 nonzeros out of 64).
"""

cimport cython

ctypedef fused number:
    double
    double complex


@cython.boundscheck(False)
@cython.wraparound(False)
def coproduct_matvec(double[:, ::1] cell, number[::1] x, number[::1] y, int n_slots):
    """y += sum over slots of the slot-local cell action on x. In place."""
    cdef Py_ssize_t d = cell.shape[0]
    cdef Py_ssize_t total = x.shape[0]
    cdef Py_ssize_t k, left, right, l, r, i, j, base_in, base_out, block
    cdef double c

    if y.shape[0] != total:
        raise ValueError("output size mismatch")

    right = 1
    for k in range(n_slots - 1):
        right *= d

    for k in range(n_slots):
        left = total // (d * right)
        block = d * right
        for l in range(left):
            for i in range(d):
                base_out = l * block + i * right
                for j in range(d):
                    c = cell[i, j]
                    if c == 0.0:
                        continue
                    base_in = l * block + j * right
                    for r in range(right):
                        y[base_out + r] = y[base_out + r] + c * x[base_in + r]
        right //= d
        if right == 0:
            break
