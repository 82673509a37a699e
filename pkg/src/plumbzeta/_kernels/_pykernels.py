"""Numpy implementation of the subset kernels (used when the Cython build is absent).

For a fixed l' with E*-coordinates ``a`` the closure J(I) of every vertex
subset I is computed at once.  Subsets are bitmasks.  Closed sets are stable
under intersection, so J(I) = J(I + v) for any v violating the stopping
condition at I; masks are therefore filled from the full set downwards by
popcount.
"""
from __future__ import annotations

import numpy as np

_CHUNK_CELLS = 1 << 23


def subset_bits(n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    return (masks[:, None] >> np.arange(n, dtype=np.int64)) & 1


def _prepare(offdiag, a):
    off = np.asarray(offdiag, dtype=np.int64)
    n = off.shape[0]
    off = off.copy()
    np.fill_diagonal(off, 0)
    a = np.asarray(a, dtype=np.int64).reshape(-1, n)
    return off, a, n


def closure_table(offdiag, a) -> np.ndarray:
    """J-closure masks, shape (len(a), 2**n)."""
    off, a, n = _prepare(offdiag, a)
    size = 1 << n
    bits = subset_bits(n)
    row_sums = bits @ off.T  # row_sums[I, v] = (E_v, E_I) for v outside I
    outside = bits == 0
    masks = np.arange(size, dtype=np.int64)
    popcount = bits.sum(axis=1)
    levels = [masks[popcount == k] for k in range(n + 1)]
    out = np.empty((a.shape[0], size), dtype=np.int64)
    step = max(1, _CHUNK_CELLS // (size * max(n, 1)))
    for lo in range(0, a.shape[0], step):
        chunk = a[lo:lo + step]
        viol = (row_sums[None, :, :] > chunk[:, None, :]) & outside[None, :, :]
        has = viol.any(axis=2)
        succ = masks[None, :] | (np.int64(1) << viol.argmax(axis=2).astype(np.int64))
        table = np.broadcast_to(masks, (chunk.shape[0], size)).copy()
        for k in range(n - 1, -1, -1):
            idx = levels[k]
            nxt = np.take_along_axis(table, succ[:, idx], axis=1)
            table[:, idx] = np.where(has[:, idx], nxt, idx[None, :])
        out[lo:lo + step] = table
    return out


def incexc_sums(offdiag, chi_reduced, a) -> np.ndarray:
    """sum_I (-1)^{|I|+1} (chi(E_J) + sum_{v in J} a_v) with J = J(l', I), per row of ``a``."""
    off, a, n = _prepare(offdiag, a)
    chi_reduced = np.asarray(chi_reduced, dtype=np.int64)
    bits = subset_bits(n)
    sign = np.where(bits.sum(axis=1) % 2 == 1, 1, -1).astype(np.int64)
    table = closure_table(off, a)
    sub_sums = a @ bits.T
    vals = chi_reduced[table] + np.take_along_axis(sub_sums, table, axis=1)
    return vals @ sign
