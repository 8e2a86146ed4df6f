# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled similarity kernel: batched cosine scores against a packed corpus."""

from libc.math cimport sqrt

import numpy as np


def cosine_scores(double[:, ::1] matrix, double[::1] row_norms, double[::1] query):
    """Cosine similarity of `query` against every row of `matrix`.

    `row_norms` must hold the L2 norm of each row. Rows (or queries) with a
    zero norm score 0 by convention.
    """
    cdef Py_ssize_t n = matrix.shape[0]
    cdef Py_ssize_t d = matrix.shape[1]
    cdef Py_ssize_t i, j
    cdef double dot, qnorm = 0.0

    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] out_view = out

    for j in range(d):
        qnorm += query[j] * query[j]
    qnorm = sqrt(qnorm)
    if qnorm == 0.0:
        return out

    for i in range(n):
        if row_norms[i] == 0.0:
            continue
        dot = 0.0
        for j in range(d):
            dot += matrix[i, j] * query[j]
        out_view[i] = dot / (row_norms[i] * qnorm)
    return out
