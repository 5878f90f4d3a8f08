# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels (see _ref.py for contracts)."""

from libc.stdlib cimport calloc, free

import numpy as np

BACKEND_NAME = "cython"


def kahan_sum(x) -> float:
    cdef double[::1] v = np.ascontiguousarray(x, dtype=np.float64)
    cdef double s = 0.0, c = 0.0, y, t
    cdef Py_ssize_t i, n = v.shape[0]
    for i in range(n):
        y = v[i] + c
        t = s + y
        c = y - (t - s)
        s = t
    return s


cdef void _cumsum_row(const double[::1] src, double[::1] dst) noexcept nogil:
    cdef double s = 0.0, c = 0.0, y, t
    cdef Py_ssize_t i, n = src.shape[0]
    for i in range(n):
        y = src[i] + c
        t = s + y
        c = y - (t - s)
        s = t
        dst[i] = s


def comp_cumsum(x):
    """Kahan running sums along the last axis of a float64 array."""
    arr = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty_like(arr)
    cdef double[:, ::1] src2, dst2
    cdef Py_ssize_t r
    if arr.ndim == 1:
        _cumsum_row(arr, out)
        return out
    cdef Py_ssize_t last = arr.shape[arr.ndim - 1]
    flat = arr.reshape(-1, last)
    oflat = out.reshape(-1, last)
    src2 = flat
    dst2 = oflat
    with nogil:
        for r in range(src2.shape[0]):
            _cumsum_row(src2[r], dst2[r])
    return out


def nonsmooth_count(limit, b) -> int:
    """Count n <= limit having at least one prime factor >= b.

    One byte per integer: bit 0 marks composites, bit 1 marks n with a
    prime factor in [b, sqrt(limit)]; larger prime factors are counted
    through the smooth-cofactor table.
    """
    cdef long long lim = limit, bb = b
    if lim < 2 or lim < bb:
        return 0
    if bb <= 2:
        return lim - 1
    cdef long long root = <long long>(lim ** 0.5)
    while (root + 1) * (root + 1) <= lim:
        root += 1
    while root * root > lim:
        root -= 1

    cdef unsigned char* flags = <unsigned char*>calloc(lim + 1, 1)
    if flags == NULL:
        raise MemoryError()
    cdef long long p, j, total = 0, cum = 0
    cdef long long* smooth_cum = NULL
    try:
        for p in range(2, root + 1):
            if not (flags[p] & 1):
                j = p * p
                while j <= lim:
                    flags[j] |= 1
                    j += p
        for p in range(bb, root + 1):
            if not (flags[p] & 1):
                j = p
                while j <= lim:
                    flags[j] |= 2
                    j += p
        for j in range(2, lim + 1):
            if flags[j] & 2:
                total += 1

        smooth_cum = <long long*>calloc(root + 1, sizeof(long long))
        if smooth_cum == NULL:
            raise MemoryError()
        for j in range(1, root + 1):
            if not (flags[j] & 2):
                cum += 1
            smooth_cum[j] = cum

        for p in range(root + 1, lim + 1):
            if not (flags[p] & 1) and p >= bb:
                total += smooth_cum[lim // p]
        return total
    finally:
        free(smooth_cum)
        free(flags)


def half_model_sum(limit, sin_table, chi) -> float:
    """sum_{n=1}^{limit} (-1)^(n+1) chi(n) sin_table[n mod len] / n^2."""
    cdef const double[::1] tab = np.ascontiguousarray(sin_table, dtype=np.float64)
    cdef const signed char[::1] cv
    cdef bint has_chi = chi is not None
    cdef long long q = 0
    if has_chi:
        cv = np.ascontiguousarray(chi, dtype=np.int8)
        q = cv.shape[0]
    cdef long long period = tab.shape[0]
    cdef long long n, lim = limit
    cdef double s = 0.0, c = 0.0, y, t, term
    for n in range(1, lim + 1):
        term = tab[n % period] / (<double>n * <double>n)
        if n % 2 == 0:
            term = -term
        if has_chi:
            term *= cv[n % q]
        y = term + c
        t = s + y
        c = y - (t - s)
        s = t
    return s
