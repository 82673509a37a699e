# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset kernels; same contracts as ``_pykernels``."""
import numpy as np

cimport numpy as cnp

ctypedef cnp.int64_t i64


def _row_sums(const i64[:, ::1] off):
    cdef Py_ssize_t n = off.shape[0], size = 1 << n
    cdef i64[:, ::1] out = np.zeros((size, n), dtype=np.int64)
    cdef Py_ssize_t mask, low, prev, v, u
    for mask in range(1, size):
        low = mask & -mask
        prev = mask ^ low
        u = 0
        while (low >> u) != 1:
            u += 1
        for v in range(n):
            out[mask, v] = out[prev, v] + (off[v, u] if v != u else 0)
    return np.asarray(out)


cdef void _closure_one(const i64[:, ::1] rs, const i64[::1] a, i64[::1] table,
                       Py_ssize_t n, Py_ssize_t size) noexcept nogil:
    cdef Py_ssize_t mask, v
    cdef bint closed
    for mask in range(size - 1, -1, -1):
        closed = True
        for v in range(n):
            if not ((mask >> v) & 1) and rs[mask, v] > a[v]:
                table[mask] = table[mask | (1 << v)]
                closed = False
                break
        if closed:
            table[mask] = mask


def _inputs(offdiag, a):
    off = np.array(offdiag, dtype=np.int64, order="C")
    np.fill_diagonal(off, 0)
    n = off.shape[0]
    av = np.ascontiguousarray(np.asarray(a, dtype=np.int64).reshape(-1, n))
    return off, av, n


def closure_table(offdiag, a):
    off, av, n_obj = _inputs(offdiag, a)
    cdef Py_ssize_t n = n_obj
    cdef Py_ssize_t size = 1 << n, b, rows = av.shape[0]
    cdef const i64[:, ::1] rs = _row_sums(off)
    cdef const i64[:, ::1] a_view = av
    out = np.empty((rows, size), dtype=np.int64)
    cdef i64[:, ::1] o = out
    with nogil:
        for b in range(rows):
            _closure_one(rs, a_view[b], o[b], n, size)
    return out


def incexc_sums(offdiag, chi_reduced, a):
    off, av, n_obj = _inputs(offdiag, a)
    cdef Py_ssize_t n = n_obj
    cdef Py_ssize_t size = 1 << n, b, mask, u, rows = av.shape[0]
    cdef const i64[:, ::1] rs = _row_sums(off)
    cdef const i64[:, ::1] a_view = av
    cdef const i64[::1] chi = np.ascontiguousarray(chi_reduced, dtype=np.int64)
    cdef i64[::1] table = np.empty(size, dtype=np.int64)
    cdef i64[::1] sub = np.zeros(size, dtype=np.int64)
    out = np.empty(rows, dtype=np.int64)
    cdef i64[::1] o = out
    cdef i64 total, low
    cdef int parity
    with nogil:
        for b in range(rows):
            _closure_one(rs, a_view[b], table, n, size)
            sub[0] = 0
            for mask in range(1, size):
                low = mask & -mask
                u = 0
                while (low >> u) != 1:
                    u += 1
                sub[mask] = sub[mask ^ low] + a_view[b, u]
            total = 0
            for mask in range(size):
                parity = 0
                u = mask
                while u:
                    parity ^= 1
                    u &= u - 1
                if parity:
                    total += chi[table[mask]] + sub[table[mask]]
                else:
                    total -= chi[table[mask]] + sub[table[mask]]
            o[b] = total
    return out
