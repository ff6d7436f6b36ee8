# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for HHG and the MGC local correlation map.

Same signatures and semantics as ``_kernels_py``; selected at import by
``mvindep._backend``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt
from libc.string cimport memset

cnp.import_array()


cdef inline void _bit_add(long* tree, Py_ssize_t size, Py_ssize_t pos) noexcept nogil:
    pos += 1
    while pos <= size:
        tree[pos] += 1
        pos += pos & (-pos)


cdef inline long _bit_prefix(long* tree, Py_ssize_t pos) noexcept nogil:
    cdef long total = 0
    pos += 1
    while pos > 0:
        total += tree[pos]
        pos -= pos & (-pos)
    return total


def hhg_statistic(const double[:, ::1] dx, const double[:, ::1] dy,
                  const cnp.int64_t[:, ::1] ox, const cnp.int64_t[:, ::1] oy):
    """Sum of the 2x2 chi-square scores over all ordered pairs ``i != j``.

    ``ox[i]`` / ``oy[i]`` must list the columns of row ``i`` of ``dx`` / ``dy``
    in ascending order of distance (any order within ties).
    """
    cdef Py_ssize_t n = dx.shape[0]
    cdef Py_ssize_t i, j, t, s, k
    cdef double m = <double>(n - 2)
    cdef double total = 0.0
    cdef double a11, a1, ac1, a12, a21, a22, a2, ac2, den, diff
    cdef long[::1] brank = np.empty(n, dtype=np.int_)
    cdef long[::1] rowc = np.empty(n, dtype=np.int_)
    cdef long[::1] colc = np.empty(n, dtype=np.int_)
    cdef long[::1] joint = np.empty(n, dtype=np.int_)
    cdef long[::1] tree = np.zeros(n + 1, dtype=np.int_)
    cdef long r

    if n < 4:
        return 0.0
    with nogil:
        for i in range(n):
            # dense ranks of dy[i] and counts of entries <= each value
            t = 0
            r = -1
            while t < n:
                s = t
                while s + 1 < n and dy[i, oy[i, s + 1]] == dy[i, oy[i, t]]:
                    s += 1
                r += 1
                for k in range(t, s + 1):
                    brank[oy[i, k]] = r
                    colc[oy[i, k]] = s + 1
                t = s + 1

            memset(&tree[0], 0, (n + 1) * sizeof(long))
            t = 0
            while t < n:
                s = t
                while s + 1 < n and dx[i, ox[i, s + 1]] == dx[i, ox[i, t]]:
                    s += 1
                for k in range(t, s + 1):
                    _bit_add(&tree[0], n, brank[ox[i, k]])
                for k in range(t, s + 1):
                    rowc[ox[i, k]] = s + 1
                    joint[ox[i, k]] = _bit_prefix(&tree[0], brank[ox[i, k]])
                t = s + 1

            for j in range(n):
                if j == i:
                    continue
                # k = i and k = j always fall in the "<=" cells
                a11 = <double>(joint[j] - 2)
                a1 = <double>(rowc[j] - 2)
                ac1 = <double>(colc[j] - 2)
                a2 = m - a1
                ac2 = m - ac1
                den = a1 * a2 * ac1 * ac2
                if den == 0.0:
                    continue
                a12 = a1 - a11
                a21 = ac1 - a11
                a22 = m - a1 - ac1 + a11
                diff = a12 * a21 - a11 * a22
                total += m * diff * diff / den
    return total


def mgc_local_map(const double[:, ::1] cx, const double[:, ::1] cy,
                  const cnp.int64_t[:, ::1] rx, const cnp.int64_t[:, ::1] ry):
    """Local correlations ``c[k-1, l-1]`` for every neighborhood pair ``(k, l)``.

    ``rx[i, j]`` is the 0-based position of column ``j`` among the sorted
    entries of row ``i`` of the x distance matrix; entry ``(i, j)`` belongs to
    the ``k``-nearest-neighbor mask iff ``rx[i, j] < k``.
    """
    cdef Py_ssize_t n = cx.shape[0]
    cdef Py_ssize_t i, j, a, b
    cdef double v
    out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] hist = out
    cdef double[::1] vx = np.zeros(n, dtype=np.float64)
    cdef double[::1] vy = np.zeros(n, dtype=np.float64)

    with nogil:
        for i in range(n):
            for j in range(n):
                hist[rx[i, j], ry[i, j]] += cx[i, j] * cy[i, j]
                vx[rx[i, j]] += cx[i, j] * cx[i, j]
                vy[ry[i, j]] += cy[i, j] * cy[i, j]
        for a in range(1, n):
            vx[a] += vx[a - 1]
            vy[a] += vy[a - 1]
        for a in range(n):
            for b in range(1, n):
                hist[a, b] += hist[a, b - 1]
        for a in range(1, n):
            for b in range(n):
                hist[a, b] += hist[a - 1, b]
        for a in range(n):
            for b in range(n):
                v = vx[a] * vy[b]
                if vx[a] > 0.0 and vy[b] > 0.0:
                    hist[a, b] = hist[a, b] / sqrt(v)
                else:
                    hist[a, b] = 0.0
    return out
