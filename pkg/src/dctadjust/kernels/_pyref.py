"""Pure-NumPy reference kernels (fallback backend).

All kernels operate on batches: inputs are (nvec, N) float64 arrays and a
new array of the same shape is returned.  The fast DCT-2 is the recursive
even/odd split

    u = (x_n + x_{N-1-n}) / sqrt(2),   v = (x_n - x_{N-1-n}) / sqrt(2)
    y_even = DCT2_{N/2}(u),            y_odd = DCT4_{N/2}(v)

down to a hand-unrolled 4-point base case, with the DCT-4 reduced to one
half-size DCT-2 and one half-size DST-2 through a stage of input pair
rotations and scaled output butterflies.  The DST-3 costs no multiplies
beyond the DCT-2 core: DST3 = S * DCT2^T * R is an index reversal, an
inverse DCT-2, and alternating output signs.
"""
from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"

_SQRT1_2 = 1.0 / math.sqrt(2.0)
_C8 = math.cos(math.pi / 8.0)
_S8 = math.sin(math.pi / 8.0)
_A4 = math.cos(math.pi / 8.0) * _SQRT1_2
_B4 = math.cos(3.0 * math.pi / 8.0) * _SQRT1_2


def _psi(m: int) -> tuple[np.ndarray, np.ndarray]:
    n = np.arange(m // 2)
    psi = np.pi * (2 * n + 1) / (4 * m)
    return np.cos(psi), np.sin(psi)


def _dct2(x: np.ndarray) -> np.ndarray:
    n = x.shape[1]
    if n == 1:
        return x.copy()
    if n == 2:
        out = np.empty_like(x)
        out[:, 0] = (x[:, 0] + x[:, 1]) * _SQRT1_2
        out[:, 1] = (x[:, 0] - x[:, 1]) * _SQRT1_2
        return out
    if n == 4:
        s03 = x[:, 0] + x[:, 3]
        d03 = x[:, 0] - x[:, 3]
        s12 = x[:, 1] + x[:, 2]
        d12 = x[:, 1] - x[:, 2]
        out = np.empty_like(x)
        out[:, 0] = 0.5 * (s03 + s12)
        out[:, 2] = 0.5 * (s03 - s12)
        out[:, 1] = _A4 * d03 + _B4 * d12
        out[:, 3] = _B4 * d03 - _A4 * d12
        return out
    half = n // 2
    a = x[:, :half]
    b = x[:, ::-1][:, :half]
    u = (a + b) * _SQRT1_2
    v = (a - b) * _SQRT1_2
    out = np.empty_like(x)
    out[:, 0::2] = _dct2(u)
    out[:, 1::2] = _dct4(v)
    return out


def _dst2(x: np.ndarray) -> np.ndarray:
    # DST2 = R * DCT2 * S: sign-alternate the input, DCT-2, reverse the output
    alt = x.copy()
    alt[:, 1::2] = -alt[:, 1::2]
    return _dct2(alt)[:, ::-1]


def _dct4(x: np.ndarray) -> np.ndarray:
    m = x.shape[1]
    if m == 2:
        out = np.empty_like(x)
        out[:, 0] = _C8 * x[:, 0] + _S8 * x[:, 1]
        out[:, 1] = _S8 * x[:, 0] - _C8 * x[:, 1]
        return out
    half = m // 2
    cp, sp = _psi(m)
    a = x[:, :half]
    b = x[:, ::-1][:, :half]
    p = a * cp + b * sp
    q = b * cp - a * sp
    c = _dct2(p)
    s = _dst2(q)
    out = np.empty_like(x)
    out[:, 0] = c[:, 0]
    out[:, 2 : 2 * half : 2] = (c[:, 1:] + s[:, : half - 1]) * _SQRT1_2
    out[:, 1 : 2 * half - 2 : 2] = (c[:, 1:] - s[:, : half - 1]) * _SQRT1_2
    out[:, 2 * half - 1] = -s[:, half - 1]
    return out


def _idct2(y: np.ndarray) -> np.ndarray:
    n = y.shape[1]
    if n == 1:
        return y.copy()
    if n == 2:
        out = np.empty_like(y)
        out[:, 0] = (y[:, 0] + y[:, 1]) * _SQRT1_2
        out[:, 1] = (y[:, 0] - y[:, 1]) * _SQRT1_2
        return out
    if n == 4:
        s03 = y[:, 0] + y[:, 2]
        s12 = y[:, 0] - y[:, 2]
        d03 = 2.0 * (_A4 * y[:, 1] + _B4 * y[:, 3])
        d12 = 2.0 * (_B4 * y[:, 1] - _A4 * y[:, 3])
        out = np.empty_like(y)
        out[:, 0] = 0.5 * (s03 + d03)
        out[:, 3] = 0.5 * (s03 - d03)
        out[:, 1] = 0.5 * (s12 + d12)
        out[:, 2] = 0.5 * (s12 - d12)
        return out
    half = n // 2
    u = _idct2(np.ascontiguousarray(y[:, 0::2]))
    v = _idct4(np.ascontiguousarray(y[:, 1::2]))
    out = np.empty_like(y)
    out[:, :half] = (u + v) * _SQRT1_2
    out[:, half:] = ((u - v) * _SQRT1_2)[:, ::-1]
    return out


def _idst2(s: np.ndarray) -> np.ndarray:
    # inverse of R * DCT2 * S: reverse, inverse DCT-2, sign-alternate
    out = _idct2(np.ascontiguousarray(s[:, ::-1]))
    out[:, 1::2] = -out[:, 1::2]
    return out


def _idct4(y: np.ndarray) -> np.ndarray:
    m = y.shape[1]
    if m == 2:
        out = np.empty_like(y)
        out[:, 0] = _C8 * y[:, 0] + _S8 * y[:, 1]
        out[:, 1] = _S8 * y[:, 0] - _C8 * y[:, 1]
        return out
    half = m // 2
    c = np.empty((y.shape[0], half))
    s = np.empty((y.shape[0], half))
    c[:, 0] = y[:, 0]
    c[:, 1:] = (y[:, 2 : 2 * half : 2] + y[:, 1 : 2 * half - 2 : 2]) * _SQRT1_2
    s[:, : half - 1] = (y[:, 2 : 2 * half : 2] - y[:, 1 : 2 * half - 2 : 2]) * _SQRT1_2
    s[:, half - 1] = -y[:, 2 * half - 1]
    p = _idct2(c)
    q = _idst2(s)
    cp, sp = _psi(m)
    out = np.empty_like(y)
    out[:, :half] = p * cp - q * sp
    out[:, half:] = (p * sp + q * cp)[:, ::-1]
    return out


def dct2(x: np.ndarray) -> np.ndarray:
    return _dct2(np.ascontiguousarray(x, dtype=float))


def idct2(y: np.ndarray) -> np.ndarray:
    return _idct2(np.ascontiguousarray(y, dtype=float))


def dst3(x: np.ndarray) -> np.ndarray:
    out = _idct2(np.ascontiguousarray(x[:, ::-1], dtype=float))
    out[:, 1::2] = -out[:, 1::2]
    return out


def idst3(y: np.ndarray) -> np.ndarray:
    alt = np.ascontiguousarray(y, dtype=float).copy()
    alt[:, 1::2] = -alt[:, 1::2]
    return np.ascontiguousarray(_dct2(alt)[:, ::-1])


def band(a: np.ndarray, taps: int, x: np.ndarray) -> np.ndarray:
    """y = A x restricted to the band |i-j| < taps (values outside are zero)."""
    n = a.shape[0]
    out = np.zeros_like(x)
    for d in range(-(taps - 1), taps):
        diag = np.diagonal(a, offset=d)
        if d >= 0:
            out[:, : n - d] += diag * x[:, d:]
        else:
            out[:, -d:] += diag * x[:, : n + d]
    return out


def subblock(blk: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Multiply the leading entries by the B x B block; the tail is copied bit-identically."""
    b = blk.shape[0]
    out = x.copy()
    out[:, :b] = x[:, :b] @ blk.T
    return out


def dense(m: np.ndarray, x: np.ndarray) -> np.ndarray:
    return x @ m.T
