# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: recursive fast DCT-2/DCT-4 core, banded and sub-block
matrix application, and the dense mat-vec baseline, all over vector batches.

Mirrors kernels._pyref exactly (same factorization, same arithmetic order
per output), sizes up to 64.
"""
import numpy as np

from libc.math cimport cos, sin

BACKEND_NAME = "compiled"

cdef int MAXN = 64

cdef double SQRT1_2 = 0.7071067811865476
cdef double C8 = cos(0.39269908169872414)   # pi/8
cdef double S8 = sin(0.39269908169872414)
cdef double A4 = cos(0.39269908169872414) * SQRT1_2
cdef double B4 = cos(3.0 * 0.39269908169872414) * SQRT1_2

# pair-rotation angle tables for the DCT-4 stages: psi_n = pi*(2n+1)/(4M),
# packed for M = 4, 8, 16, 32 at offsets 0, 2, 6, 14
cdef double PSI_C[30]
cdef double PSI_S[30]

cdef int _psi_off(int m) noexcept nogil:
    if m == 4:
        return 0
    elif m == 8:
        return 2
    elif m == 16:
        return 6
    return 14

cdef void _init_tables() noexcept:
    cdef int m, n, off
    cdef double psi
    cdef double pi = 3.141592653589793238462643383279502884
    for m in (4, 8, 16, 32):
        off = _psi_off(m)
        for n in range(m // 2):
            psi = pi * (2 * n + 1) / (4.0 * m)
            PSI_C[off + n] = cos(psi)
            PSI_S[off + n] = sin(psi)

_init_tables()


cdef void _dct2(const double* x, double* y, int n) noexcept nogil:
    cdef double u[32]
    cdef double v[32]
    cdef double eu[32]
    cdef double ov[32]
    cdef double s03, d03, s12, d12, a, b
    cdef int i, half
    if n == 1:
        y[0] = x[0]
        return
    if n == 2:
        y[0] = (x[0] + x[1]) * SQRT1_2
        y[1] = (x[0] - x[1]) * SQRT1_2
        return
    if n == 4:
        s03 = x[0] + x[3]
        d03 = x[0] - x[3]
        s12 = x[1] + x[2]
        d12 = x[1] - x[2]
        y[0] = 0.5 * (s03 + s12)
        y[2] = 0.5 * (s03 - s12)
        y[1] = A4 * d03 + B4 * d12
        y[3] = B4 * d03 - A4 * d12
        return
    half = n >> 1
    for i in range(half):
        a = x[i]
        b = x[n - 1 - i]
        u[i] = (a + b) * SQRT1_2
        v[i] = (a - b) * SQRT1_2
    _dct2(u, eu, half)
    _dct4(v, ov, half)
    for i in range(half):
        y[2 * i] = eu[i]
        y[2 * i + 1] = ov[i]


cdef void _dct4(const double* x, double* y, int m) noexcept nogil:
    cdef double p[16]
    cdef double q[16]
    cdef double c[16]
    cdef double sq[16]
    cdef double s2[16]
    cdef double a, b, cp, sp
    cdef int n, half, off, r
    if m == 2:
        y[0] = C8 * x[0] + S8 * x[1]
        y[1] = S8 * x[0] - C8 * x[1]
        return
    half = m >> 1
    off = _psi_off(m)
    for n in range(half):
        a = x[n]
        b = x[m - 1 - n]
        cp = PSI_C[off + n]
        sp = PSI_S[off + n]
        p[n] = a * cp + b * sp
        q[n] = b * cp - a * sp
    _dct2(p, c, half)
    # DST2(q) = reverse(DCT2(sign-alternated q))
    for n in range(half):
        sq[n] = q[n] if n % 2 == 0 else -q[n]
    _dct2(sq, s2, half)
    y[0] = c[0]
    for r in range(1, half):
        y[2 * r] = (c[r] + s2[half - r]) * SQRT1_2
        y[2 * r - 1] = (c[r] - s2[half - r]) * SQRT1_2
    y[2 * half - 1] = -s2[0]


cdef void _idct2(const double* y, double* x, int n) noexcept nogil:
    cdef double ye[32]
    cdef double yo[32]
    cdef double u[32]
    cdef double v[32]
    cdef double s03, s12, d03, d12
    cdef int i, half
    if n == 1:
        x[0] = y[0]
        return
    if n == 2:
        x[0] = (y[0] + y[1]) * SQRT1_2
        x[1] = (y[0] - y[1]) * SQRT1_2
        return
    if n == 4:
        s03 = y[0] + y[2]
        s12 = y[0] - y[2]
        d03 = 2.0 * (A4 * y[1] + B4 * y[3])
        d12 = 2.0 * (B4 * y[1] - A4 * y[3])
        x[0] = 0.5 * (s03 + d03)
        x[3] = 0.5 * (s03 - d03)
        x[1] = 0.5 * (s12 + d12)
        x[2] = 0.5 * (s12 - d12)
        return
    half = n >> 1
    for i in range(half):
        ye[i] = y[2 * i]
        yo[i] = y[2 * i + 1]
    _idct2(ye, u, half)
    _idct4(yo, v, half)
    for i in range(half):
        x[i] = (u[i] + v[i]) * SQRT1_2
        x[n - 1 - i] = (u[i] - v[i]) * SQRT1_2


cdef void _idct4(const double* y, double* x, int m) noexcept nogil:
    cdef double c[16]
    cdef double s[16]
    cdef double sr[16]
    cdef double p[16]
    cdef double q[16]
    cdef double cp, sp
    cdef int n, half, off, r
    if m == 2:
        x[0] = C8 * y[0] + S8 * y[1]
        x[1] = S8 * y[0] - C8 * y[1]
        return
    half = m >> 1
    off = _psi_off(m)
    c[0] = y[0]
    for r in range(1, half):
        c[r] = (y[2 * r] + y[2 * r - 1]) * SQRT1_2
        s[r - 1] = (y[2 * r] - y[2 * r - 1]) * SQRT1_2
    s[half - 1] = -y[2 * half - 1]
    _idct2(c, p, half)
    # inverse DST2: reverse, inverse DCT2, sign-alternate
    for n in range(half):
        sr[n] = s[half - 1 - n]
    _idct2(sr, q, half)
    for n in range(1, half, 2):
        q[n] = -q[n]
    for n in range(half):
        cp = PSI_C[off + n]
        sp = PSI_S[off + n]
        x[n] = p[n] * cp - q[n] * sp
        x[m - 1 - n] = p[n] * sp + q[n] * cp


def dct2(x):
    cdef const double[:, ::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    out_arr = np.empty((xv.shape[0], xv.shape[1]))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i
    cdef int n = <int>xv.shape[1]
    if n > MAXN:
        raise ValueError(f"size {n} exceeds compiled kernel limit {MAXN}")
    for i in range(xv.shape[0]):
        _dct2(&xv[i, 0], &out[i, 0], n)
    return out_arr


def idct2(y):
    cdef const double[:, ::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    out_arr = np.empty((yv.shape[0], yv.shape[1]))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i
    cdef int n = <int>yv.shape[1]
    if n > MAXN:
        raise ValueError(f"size {n} exceeds compiled kernel limit {MAXN}")
    for i in range(yv.shape[0]):
        _idct2(&yv[i, 0], &out[i, 0], n)
    return out_arr


def dst3(x):
    # DST3 = S * DCT2^T * R: reverse input, inverse DCT-2, alternate signs
    cdef const double[:, ::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    out_arr = np.empty((xv.shape[0], xv.shape[1]))
    cdef double[:, ::1] out = out_arr
    cdef double rev[64]
    cdef Py_ssize_t i
    cdef int n = <int>xv.shape[1], j
    if n > MAXN:
        raise ValueError(f"size {n} exceeds compiled kernel limit {MAXN}")
    for i in range(xv.shape[0]):
        for j in range(n):
            rev[j] = xv[i, n - 1 - j]
        _idct2(rev, &out[i, 0], n)
        for j in range(1, n, 2):
            out[i, j] = -out[i, j]
    return out_arr


def idst3(y):
    # inverse DST3 = R * DCT2 * S: alternate signs, DCT-2, reverse output
    cdef const double[:, ::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    out_arr = np.empty((yv.shape[0], yv.shape[1]))
    cdef double[:, ::1] out = out_arr
    cdef double alt[64]
    cdef double res[64]
    cdef Py_ssize_t i
    cdef int n = <int>yv.shape[1], j
    if n > MAXN:
        raise ValueError(f"size {n} exceeds compiled kernel limit {MAXN}")
    for i in range(yv.shape[0]):
        for j in range(n):
            alt[j] = yv[i, j] if j % 2 == 0 else -yv[i, j]
        _dct2(alt, res, n)
        for j in range(n):
            out[i, j] = res[n - 1 - j]
    return out_arr


def band(a, int taps, x):
    cdef const double[:, ::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef const double[:, ::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    out_arr = np.empty((xv.shape[0], xv.shape[1]))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i
    cdef int n = <int>xv.shape[1], r, j, j0, j1
    cdef double acc
    for i in range(xv.shape[0]):
        for r in range(n):
            j0 = r - taps + 1
            if j0 < 0:
                j0 = 0
            j1 = r + taps
            if j1 > n:
                j1 = n
            acc = 0.0
            for j in range(j0, j1):
                acc += av[r, j] * xv[i, j]
            out[i, r] = acc
    return out_arr


def subblock(blk, x):
    cdef const double[:, ::1] bv = np.ascontiguousarray(blk, dtype=np.float64)
    cdef const double[:, ::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    out_arr = np.array(x, dtype=np.float64, copy=True, order="C")
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i
    cdef int b = <int>bv.shape[0], r, j
    cdef double acc
    for i in range(xv.shape[0]):
        for r in range(b):
            acc = 0.0
            for j in range(b):
                acc += bv[r, j] * xv[i, j]
            out[i, r] = acc
    return out_arr


def dense(m, x):
    cdef const double[:, ::1] mv = np.ascontiguousarray(m, dtype=np.float64)
    cdef const double[:, ::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    out_arr = np.empty((xv.shape[0], mv.shape[0]))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i
    cdef int rows = <int>mv.shape[0], n = <int>xv.shape[1], r, j
    cdef double acc
    for i in range(xv.shape[0]):
        for r in range(rows):
            acc = 0.0
            for j in range(n):
                acc += mv[r, j] * xv[i, j]
            out[i, r] = acc
    return out_arr
