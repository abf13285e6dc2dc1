# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simulation kernels over int64 coefficient buffers.

Same layout and semantics as _kernels_py. Coefficients are kept below
LIMIT in magnitude; a kernel that could exceed it returns False without
touching the buffer, and the caller falls back to unbounded Python ints.
"""

cdef long long LIMIT = 1LL << 61


cdef inline long long _absll(long long x) nogil:
    return -x if x < 0 else x


cdef bint _rows_small(long long[::1] buf, Py_ssize_t ncols, Py_ssize_t r0, Py_ssize_t r1) nogil:
    cdef Py_ssize_t w = ncols * 4, i
    cdef Py_ssize_t s0 = r0 * w, s1 = r1 * w
    for i in range(w):
        if _absll(buf[s0 + i]) >= LIMIT or _absll(buf[s1 + i]) >= LIMIT:
            return False
    return True


cdef inline void _h_rows(long long[::1] buf, Py_ssize_t ncols, Py_ssize_t r0, Py_ssize_t r1) nogil:
    cdef Py_ssize_t w = ncols * 4, i
    cdef Py_ssize_t s0 = r0 * w, s1 = r1 * w
    cdef long long x, y
    for i in range(w):
        x = buf[s0 + i]
        y = buf[s1 + i]
        buf[s0 + i] = x + y
        buf[s1 + i] = x - y


def h_rows(long long[::1] buf, Py_ssize_t ncols, Py_ssize_t r0, Py_ssize_t r1):
    if not _rows_small(buf, ncols, r0, r1):
        return False
    _h_rows(buf, ncols, r0, r1)
    return True


def h_wire(long long[::1] buf, Py_ssize_t nrows, Py_ssize_t ncols, Py_ssize_t mask):
    cdef Py_ssize_t r, i
    for i in range(buf.shape[0]):
        if _absll(buf[i]) >= LIMIT:
            return False
    for r in range(nrows):
        if not (r & mask):
            _h_rows(buf, ncols, r, r | mask)
    return True


cdef void _rotate(long long[::1] buf, Py_ssize_t start, Py_ssize_t stop, int m) nogil:
    cdef Py_ssize_t i
    cdef long long a, b, c, d, t
    cdef int j
    m = m % 8
    if m < 0:
        m += 8
    i = start
    while i < stop:
        a = buf[i]
        b = buf[i + 1]
        c = buf[i + 2]
        d = buf[i + 3]
        for j in range(m):
            t = a
            a = b
            b = c
            c = d
            d = -t
        buf[i] = a
        buf[i + 1] = b
        buf[i + 2] = c
        buf[i + 3] = d
        i += 4


def phase_rows(long long[::1] buf, Py_ssize_t ncols, Py_ssize_t r, int m):
    cdef Py_ssize_t w = ncols * 4
    _rotate(buf, r * w, (r + 1) * w, m)
    return True


def phase_wire(long long[::1] buf, Py_ssize_t nrows, Py_ssize_t ncols, Py_ssize_t mask, int m):
    cdef Py_ssize_t r, w = ncols * 4
    for r in range(nrows):
        if r & mask:
            _rotate(buf, r * w, (r + 1) * w, m)
    return True


def phase_all(long long[::1] buf, int m):
    _rotate(buf, 0, buf.shape[0], m)
    return True


cdef inline void _swap_rows(long long[::1] buf, Py_ssize_t ncols, Py_ssize_t r0, Py_ssize_t r1) nogil:
    cdef Py_ssize_t w = ncols * 4, i
    cdef Py_ssize_t s0 = r0 * w, s1 = r1 * w
    cdef long long t
    for i in range(w):
        t = buf[s0 + i]
        buf[s0 + i] = buf[s1 + i]
        buf[s1 + i] = t


def swap_rows(long long[::1] buf, Py_ssize_t ncols, Py_ssize_t r0, Py_ssize_t r1):
    _swap_rows(buf, ncols, r0, r1)


def x_wire(long long[::1] buf, Py_ssize_t nrows, Py_ssize_t ncols, Py_ssize_t mask):
    cdef Py_ssize_t r
    for r in range(nrows):
        if not (r & mask):
            _swap_rows(buf, ncols, r, r | mask)


def cnot(long long[::1] buf, Py_ssize_t nrows, Py_ssize_t ncols, Py_ssize_t cmask, Py_ssize_t tmask):
    cdef Py_ssize_t r
    for r in range(nrows):
        if (r & cmask) and not (r & tmask):
            _swap_rows(buf, ncols, r, r | tmask)


def reduce_sqrt2(long long[::1] buf):
    cdef Py_ssize_t i, n = buf.shape[0]
    cdef long long a, b, c, d
    for i in range(0, n, 4):
        if ((buf[i] ^ buf[i + 2]) & 1) or ((buf[i + 1] ^ buf[i + 3]) & 1):
            return False
    for i in range(0, n, 4):
        a = buf[i]
        b = buf[i + 1]
        c = buf[i + 2]
        d = buf[i + 3]
        # differences of equal-parity values: exact halving via arithmetic shift
        buf[i] = (b - d) >> 1
        buf[i + 1] = (c + a) >> 1
        buf[i + 2] = (d + b) >> 1
        buf[i + 3] = (c - a) >> 1
    return True
