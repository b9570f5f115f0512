# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels; same contract as ``_kernels_py``."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

MAX_MODULUS = 2 ** 31


def rank_mod_p(rows, p):
    """Rank over GF(p) for p < 2**31, on a contiguous int64 buffer."""
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(rows[0])
    if ncols == 0:
        return 0
    if p >= MAX_MODULUS:
        from ._kernels_py import rank_mod_p as slow
        return slow(rows, p)
    cdef int64_t q = p
    cdef int64_t *a = <int64_t *> malloc(nrows * ncols * sizeof(int64_t))
    if a == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, c, piv, rank = 0
    cdef int64_t f, inv, t
    cdef int64_t *prow
    cdef int64_t *row
    try:
        for i in range(nrows):
            r = rows[i]
            for j in range(ncols):
                a[i * ncols + j] = r[j] % p
        for c in range(ncols):
            piv = -1
            for i in range(rank, nrows):
                if a[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(c, ncols):
                    t = a[piv * ncols + j]
                    a[piv * ncols + j] = a[rank * ncols + j]
                    a[rank * ncols + j] = t
            prow = a + rank * ncols
            inv = pow(int(prow[c]), -1, p)
            for j in range(c, ncols):
                prow[j] = prow[j] * inv % q
            for i in range(rank + 1, nrows):
                row = a + i * ncols
                f = row[c]
                if f != 0:
                    for j in range(c, ncols):
                        if prow[j] != 0:
                            t = (row[j] - f * prow[j]) % q
                            row[j] = t + q if t < 0 else t
            rank += 1
            if rank == nrows:
                break
    finally:
        free(a)
    return rank


def rank_integer(rows):
    """Bareiss rank over the rationals; entries stay Python ints."""
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(rows[0])
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t i, j, c, piv, rank = 0
    cdef list prow, row
    cdef object a, f, prev = 1
    for c in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if (<list> m[i])[c]:
                piv = i
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = <list> m[rank]
        a = prow[c]
        for i in range(rank + 1, nrows):
            row = <list> m[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (a * row[j] - f * prow[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (a * row[j]) // prev
            row[c] = 0
        prev = a
        rank += 1
        if rank == nrows:
            break
    return rank
