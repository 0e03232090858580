"""Approximation-quality metrics.

Per-basis-vector errors compare the rows of an approximation H against the
desired transform D (row index = frequency).  Transform coding gain over a
synthetic residual covariance stands in for codec-level results: it is the
ratio (in dB) of the arithmetic to the geometric mean of the transform-domain
variances, the standard analytic predictor of compression performance.

Two covariance models are provided: AR1(rho), which favors the DCT-2, and a
one-sided random-walk residual model K[i,j] = min(i,j) + 1, whose exact KLT
is the DST-7 basis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .design import default_alpha, weighted_error
from .errors import ModelError, ShapeError


@dataclass(frozen=True)
class BasisComparison:
    """Per-row relative l2 errors of H against D, plus the weighted total."""

    size: int
    per_row_l2_error: np.ndarray
    per_row_abs_error: np.ndarray
    weighted_total: float

    def __post_init__(self):
        self.per_row_l2_error.setflags(write=False)
        self.per_row_abs_error.setflags(write=False)


def basis_comparison(h: np.ndarray, d: np.ndarray, alpha: float | None = None) -> BasisComparison:
    h = np.asarray(h, dtype=float)
    d = np.asarray(d, dtype=float)
    if h.shape != d.shape or h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ShapeError(f"expected equal square matrices, got {h.shape} vs {d.shape}")
    n = h.shape[0]
    if alpha is None:
        alpha = default_alpha(n)
    abs_err = np.linalg.norm(h - d, axis=1)
    rel_err = abs_err / np.linalg.norm(d, axis=1)
    return BasisComparison(
        size=n,
        per_row_l2_error=rel_err,
        per_row_abs_error=abs_err,
        weighted_total=weighted_error(h, d, alpha),
    )


class CovarianceKind(Enum):
    AR1 = "ar1"
    ONE_SIDED_RESIDUAL = "onesided"


@dataclass(frozen=True)
class CovarianceModel:
    kind: CovarianceKind
    size: int
    matrix: np.ndarray
    rho: float | None = None

    def __post_init__(self):
        self.matrix.setflags(write=False)


def residual_covariance_model(
    kind: CovarianceKind, size: int, rho: float = 0.95
) -> CovarianceModel:
    """AR1: K[i,j] = rho^|i-j|.  One-sided residual: K[i,j] = min(i,j) + 1
    (covariance of a unit-step random walk; its eigenvectors are the DST-7
    basis vectors)."""
    if size < 1:
        raise ModelError(f"model size must be >= 1, got {size}")
    i = np.arange(size)[:, None]
    j = np.arange(size)[None, :]
    if kind is CovarianceKind.AR1:
        if not 0.0 < rho < 1.0:
            raise ModelError(f"AR1 rho must be in (0,1), got {rho}")
        matrix = rho ** np.abs(i - j).astype(float)
        return CovarianceModel(kind=kind, size=size, matrix=matrix, rho=rho)
    matrix = np.minimum(i, j) + 1.0
    return CovarianceModel(kind=kind, size=size, matrix=matrix)


def coding_gain(t: np.ndarray, model: CovarianceModel) -> float:
    """Transform coding gain of orthonormal T over the model, in dB:
    10*log10(arithmetic mean / geometric mean of the coefficient variances)."""
    t = np.asarray(t, dtype=float)
    if t.shape != (model.size, model.size):
        raise ShapeError(f"transform shape {t.shape} does not match model size {model.size}")
    variances = np.einsum("ij,jk,ik->i", t, model.matrix, t)
    if np.any(variances <= 0):
        raise ModelError("non-positive coefficient variance; covariance is not PD")
    arith = float(np.mean(variances))
    log_geom = float(np.mean(np.log(variances)))
    return 10.0 * math.log10(arith / math.exp(log_geom))


def klt(model: CovarianceModel) -> np.ndarray:
    """Karhunen-Loeve transform of the model (eigenvectors as rows, by
    descending eigenvalue)."""
    eigvals, eigvecs = np.linalg.eigh(model.matrix)
    return np.ascontiguousarray(eigvecs[:, ::-1].T)
