"""Exact orthonormal trigonometric transform matrices.

All matrices are real and orthonormal, with rows indexed by frequency k
(row 0 = lowest frequency) and columns by spatial sample n.  Closed forms:

    DCT-2:  T[k,n] = sqrt(2/N) * c_k * cos(pi*k*(2n+1) / (2N)),  c_0 = 1/sqrt(2)
    DST-7:  T[k,n] = 2/sqrt(2N+1) * sin(pi*(2k+1)*(n+1) / (2N+1))

The remaining kinds are built from these two through the reversal matrix R
(R[m,n] = 1 iff m = N-1-n) and the alternating sign matrix S = diag((-1)^m):

    DCT-3 = DCT-2^T        DST-2 = R * DCT-2 * S       DST-3 = S * DCT-2^T * R
    DCT-8 = S * DST-7 * R

R and S applications are implemented as index reversals and sign flips, so
these relations hold exactly (bit-for-bit) on the constructed matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidDimensionError, KindMismatchError, ShapeError

SQRT1_2 = 1.0 / np.sqrt(2.0)


class TransformKind(Enum):
    DCT2 = "dct2"
    DCT3 = "dct3"
    DST2 = "dst2"
    DST3 = "dst3"
    DST7 = "dst7"
    DCT8 = "dct8"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TransformMatrix:
    """An exact N x N orthonormal transform with its kind and size."""

    kind: TransformKind
    size: int
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.shape != (self.size, self.size):
            raise ShapeError(
                f"entries shape {self.entries.shape} does not match size {self.size}"
            )
        self.entries.setflags(write=False)


@dataclass(frozen=True)
class SignFlipMatrices:
    """The exact reversal matrix R and alternating sign matrix S of size N."""

    size: int
    reversal: np.ndarray
    signs: np.ndarray

    def __post_init__(self):
        self.reversal.setflags(write=False)
        self.signs.setflags(write=False)


def alternating_signs(size: int) -> np.ndarray:
    """Vector ((-1)^m) for m = 0..size-1 as float64."""
    s = np.ones(size)
    s[1::2] = -1.0
    return s


def _dct2_entries(size: int) -> np.ndarray:
    k = np.arange(size)[:, None]
    n = np.arange(size)[None, :]
    m = np.cos(np.pi * k * (2 * n + 1) / (2 * size)) * np.sqrt(2.0 / size)
    m[0, :] *= SQRT1_2
    return m


def _dst7_entries(size: int) -> np.ndarray:
    k = np.arange(size)[:, None]
    n = np.arange(size)[None, :]
    return 2.0 / np.sqrt(2 * size + 1) * np.sin(
        np.pi * (2 * k + 1) * (n + 1) / (2 * size + 1)
    )


def build_transform(kind: TransformKind, size: int) -> TransformMatrix:
    """Construct the orthonormal transform matrix of the requested kind.

    DCT-2 and DST-7 come from their closed forms; the other four kinds are
    derived through the exact R/S relations, so the identity suite holds
    bit-for-bit by construction.
    """
    if size < 1:
        raise InvalidDimensionError(f"transform size must be >= 1, got {size}")
    sgn = alternating_signs(size)
    if kind is TransformKind.DCT2:
        entries = _dct2_entries(size)
    elif kind is TransformKind.DST7:
        entries = _dst7_entries(size)
    elif kind is TransformKind.DCT3:
        entries = np.ascontiguousarray(_dct2_entries(size).T)
    elif kind is TransformKind.DST2:
        entries = np.ascontiguousarray(_dct2_entries(size)[::-1, :] * sgn[None, :])
    elif kind is TransformKind.DST3:
        entries = np.ascontiguousarray((_dct2_entries(size).T * sgn[:, None])[:, ::-1])
    elif kind is TransformKind.DCT8:
        entries = np.ascontiguousarray((_dst7_entries(size) * sgn[:, None])[:, ::-1])
    else:
        raise KindMismatchError(f"unknown transform kind {kind!r}")
    if not np.all(np.isfinite(entries)):
        raise ValueError(f"non-finite entries in {kind} size {size}")
    return TransformMatrix(kind=kind, size=size, entries=entries)


def sign_flip_matrices(size: int) -> SignFlipMatrices:
    """Exact R (reversal) and S (alternating signs) as integer-valued matrices."""
    if size < 1:
        raise InvalidDimensionError(f"size must be >= 1, got {size}")
    reversal = np.eye(size, dtype=np.int64)[::-1].copy()
    signs = np.diag((-1) ** np.arange(size, dtype=np.int64))
    return SignFlipMatrices(size=size, reversal=reversal, signs=signs)


def flip_to_dct8(dst7: TransformMatrix) -> TransformMatrix:
    """DCT-8 from DST-7: T_C8 = S * T_S7 * R, i.e. (m,n) -> (-1)^m * T_S7[m, N-1-n]."""
    if dst7.kind is not TransformKind.DST7:
        raise KindMismatchError(f"expected a DST7 matrix, got {dst7.kind}")
    sgn = alternating_signs(dst7.size)
    entries = np.ascontiguousarray((dst7.entries * sgn[:, None])[:, ::-1])
    return TransformMatrix(kind=TransformKind.DCT8, size=dst7.size, entries=entries)


def _as_array(m) -> np.ndarray:
    return m.entries if isinstance(m, TransformMatrix) else np.asarray(m, dtype=float)


def compose_pipeline(c, b, a) -> np.ndarray:
    """Dense composition H = C * B * A (the verification oracle, not the fast path)."""
    cm, bm, am = _as_array(c), _as_array(b), _as_array(a)
    if cm.shape[1] != bm.shape[0] or bm.shape[1] != am.shape[0]:
        raise ShapeError(
            f"non-conformable shapes {cm.shape} x {bm.shape} x {am.shape}"
        )
    return cm @ bm @ am


def orthonormality_error(matrix: np.ndarray) -> float:
    """Max-norm of T*T^T - I."""
    m = np.asarray(matrix, dtype=float)
    return float(np.max(np.abs(m @ m.T - np.eye(m.shape[0]))))
