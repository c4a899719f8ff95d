# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (see pykernels for the contract)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def quat_matmul(a, b):
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    cdef double[:, :, ::1] av = a
    cdef double[:, :, ::1] bv = b
    cdef Py_ssize_t n = av.shape[0], m = av.shape[1], p = bv.shape[1]
    out = np.zeros((n, p, 4))
    cdef double[:, :, ::1] ov = out
    cdef Py_ssize_t r, c, t
    cdef double aw, ax, ay, az, bw, bx, by, bz
    with nogil:
        for r in range(n):
            for t in range(m):
                aw = av[r, t, 0]; ax = av[r, t, 1]
                ay = av[r, t, 2]; az = av[r, t, 3]
                if aw == 0.0 and ax == 0.0 and ay == 0.0 and az == 0.0:
                    continue
                for c in range(p):
                    bw = bv[t, c, 0]; bx = bv[t, c, 1]
                    by = bv[t, c, 2]; bz = bv[t, c, 3]
                    ov[r, c, 0] += aw * bw - ax * bx - ay * by - az * bz
                    ov[r, c, 1] += aw * bx + ax * bw + ay * bz - az * by
                    ov[r, c, 2] += aw * by - ax * bz + ay * bw + az * bx
                    ov[r, c, 3] += aw * bz + ax * by - ay * bx + az * bw
    return out


def bracket_batch(table, x, y):
    x = np.ascontiguousarray(np.atleast_2d(x), dtype=np.float64)
    y = np.ascontiguousarray(np.atleast_2d(y), dtype=np.float64)
    cdef double[:, ::1] xv = x
    cdef double[:, ::1] yv = y
    cdef int[::1] ii = table.i_idx
    cdef int[::1] jj = table.j_idx
    cdef int[::1] kk = table.k_idx
    cdef double[::1] cc = table.coeff
    cdef Py_ssize_t nb = xv.shape[0], nnz = cc.shape[0]
    out = np.zeros((nb, table.dim))
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t b, e
    with nogil:
        for b in range(nb):
            for e in range(nnz):
                ov[b, kk[e]] += cc[e] * xv[b, ii[e]] * yv[b, jj[e]]
    return out
