# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled GF(2) elimination on bit-packed rows."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free


cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil


cdef inline Py_ssize_t _leading_bit(uint64_t[:, ::1] m, Py_ssize_t i, Py_ssize_t top) noexcept nogil:
    cdef Py_ssize_t w = top
    while w >= 0:
        if m[i, w]:
            return (w << 6) + 63 - __builtin_clzll(m[i, w])
        w -= 1
    return -1


def rank_packed(uint64_t[:, ::1] m, Py_ssize_t ncols):
    """Rank of a bit-packed matrix; ``m`` is reduced in place.

    Bit ``c`` of a row lives in word ``c >> 6`` at position ``c & 63`` and
    bits at or beyond ``ncols`` must be zero.  Each row is reduced against
    earlier rows keyed by leading bit, so rows already in echelon form cost
    one scan.  The GIL is released for the elimination.
    """
    cdef Py_ssize_t nrows = m.shape[0]
    cdef Py_ssize_t nwords = m.shape[1]
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t i, j, lead, p, lw
    cdef bint overflow = False
    cdef Py_ssize_t *pivot
    if ncols > nwords * 64:
        raise ValueError("ncols exceeds packed width")
    if ncols == 0 or nrows == 0:
        return 0
    pivot = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if pivot == NULL:
        raise MemoryError()
    try:
        with nogil:
            for j in range(ncols):
                pivot[j] = -1
            for i in range(nrows):
                lead = _leading_bit(m, i, nwords - 1)
                while lead >= 0:
                    if lead >= ncols:
                        overflow = True
                        break
                    p = pivot[lead]
                    if p < 0:
                        pivot[lead] = i
                        rank += 1
                        break
                    lw = lead >> 6
                    for j in range(lw + 1):
                        m[i, j] ^= m[p, j]
                    lead = _leading_bit(m, i, lw)
        if overflow:
            raise ValueError("row has bits beyond ncols")
    finally:
        free(pivot)
    return rank
