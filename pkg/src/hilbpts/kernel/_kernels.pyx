# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels.

Same contract as ``_kernels_py``.  Matrices whose entries fit in 62 bits
run on a machine-integer buffer with overflow detection; on overflow the
elimination restarts on Python integers.
"""
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static int _mul_ovf(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static int _sub_ovf(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    """
    int _mul_ovf(long long a, long long b, long long *r) nogil
    int _sub_ovf(long long a, long long b, long long *r) nogil

cdef long long _LIMIT = 1LL << 62


cdef int _echelon_ll(long long *m, Py_ssize_t nrows, Py_ssize_t ncols,
                     Py_ssize_t *pivots, Py_ssize_t *rank) nogil:
    # returns 1 on overflow
    cdef long long prev = 1, piv, a, t1, t2, t
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef long long *prow
    cdef long long *row
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p * ncols + c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            for j in range(ncols):
                t = m[p * ncols + j]
                m[p * ncols + j] = m[r * ncols + j]
                m[r * ncols + j] = t
        prow = m + r * ncols
        piv = prow[c]
        for i in range(r + 1, nrows):
            row = m + i * ncols
            a = row[c]
            for j in range(c + 1, ncols):
                if _mul_ovf(piv, row[j], &t1):
                    return 1
                if _mul_ovf(a, prow[j], &t2):
                    return 1
                if _sub_ovf(t1, t2, &t):
                    return 1
                row[j] = t // prev
            row[c] = 0
        prev = piv
        pivots[r] = c
        r += 1
    rank[0] = r
    return 0


cdef tuple _echelon_obj(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef object prev = 1, piv, a
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef list prow, row
    cdef list pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and (<list>rows[p])[c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = rows[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (piv * row[j] - a * prow[j]) // prev
            elif piv != prev:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = piv * row[j] // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots


def echelon(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, rank = 0
    cdef long long *m
    cdef Py_ssize_t *piv
    cdef bint small = True
    cdef int overflow
    if nrows == 0 or ncols == 0:
        return rows, []
    for row in rows:
        for x in row:
            if not (-_LIMIT < x < _LIMIT):
                small = False
                break
        if not small:
            break
    if not small:
        return _echelon_obj(rows, ncols)
    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    piv = <Py_ssize_t *> malloc(min(nrows, ncols) * sizeof(Py_ssize_t))
    if m == NULL or piv == NULL:
        free(m)
        free(piv)
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = row[j]
        with nogil:
            overflow = _echelon_ll(m, nrows, ncols, piv, &rank)
        if overflow:
            return _echelon_obj(rows, ncols)
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(nrows)]
        return out, [piv[i] for i in range(rank)]
    finally:
        free(m)
        free(piv)
