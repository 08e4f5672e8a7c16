# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled F_p row reduction."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


cdef i64 _inv(i64 x, i64 p):
    cdef i64 result = 1
    cdef i64 e = p - 2
    x %= p
    while e > 0:
        if e & 1:
            result = (result * x) % p
        x = (x * x) % p
        e >>= 1
    return result


def rref_inplace(i64[:, ::1] a, i64 p):
    cdef Py_ssize_t rows = a.shape[0]
    cdef Py_ssize_t cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, k, j, i
    cdef i64 inv, f, t
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(c, cols):
                t = a[r, j]
                a[r, j] = a[k, j]
                a[k, j] = t
        inv = _inv(a[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            for j in range(c, cols):
                if a[r, j] != 0:
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
                    if a[i, j] < 0:
                        a[i, j] += p
        pivots.append(c)
        r += 1
    return pivots
