"""Executable fast transform pipelines.

A 1-D adjusted transform is the composition of a fast base transform with a
sparse orthogonal adjustment: band adjustments run before a fast DST-3
(pre side), sub-block adjustments run after a fast DCT-2 (post side).  The
inverse is the exact transpose pipeline.  The 2-D encoder evaluation shares
the DCT-2 coefficients among all DST-7/DCT-8 combinations and reuses one
multiplication set for each DST-7/DCT-8 pair through the chessboard sign
relation between their adjustments.

Hot loops live in `dctadjust.kernels` (compiled core with NumPy fallback);
this module is the policy layer on top.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels, opcount
from .design import AdjustmentMatrix, PatternKind, Side, dct8_adjustment_from_dst7
from .errors import (
    ConfigurationError,
    InvalidDimensionError,
    PatternError,
    ShapeError,
)
from .opcount import OperationCount
from .transforms import TransformKind, alternating_signs, build_transform

FAST_SIZES = (4, 8, 16, 32, 64)


class BasePath(Enum):
    FAST_DCT2 = "fast_dct2"
    FAST_DST3_VIA_DCT2 = "fast_dst3_via_dct2"


def _check_fast_size(n: int) -> None:
    if n not in FAST_SIZES:
        raise InvalidDimensionError(
            f"fast transforms support sizes {FAST_SIZES}, got {n}"
        )


def _as_batch(x, n: int) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1:
        if arr.shape[0] != n:
            raise ShapeError(f"vector length {arr.shape[0]}, expected {n}")
        return arr[None, :], True
    if arr.ndim == 2:
        if arr.shape[1] != n:
            raise ShapeError(f"batch width {arr.shape[1]}, expected {n}")
        return arr, False
    raise ShapeError(f"expected a vector or batch of vectors, got ndim={arr.ndim}")


def _debatch(out: np.ndarray, was_vector: bool) -> np.ndarray:
    return out[0] if was_vector else out


def fast_dct2(x) -> np.ndarray:
    """Orthonormal DCT-2 through the factored fast path."""
    arr, single = _as_batch(x, np.asarray(x).shape[-1])
    _check_fast_size(arr.shape[1])
    return _debatch(kernels.dct2(arr), single)


def fast_idct2(y) -> np.ndarray:
    arr, single = _as_batch(y, np.asarray(y).shape[-1])
    _check_fast_size(arr.shape[1])
    return _debatch(kernels.idct2(arr), single)


def fast_dst3_via_dct2(x) -> np.ndarray:
    """DST-3 at DCT-2 cost: index reversal + inverse fast DCT-2 + sign flips."""
    arr, single = _as_batch(x, np.asarray(x).shape[-1])
    _check_fast_size(arr.shape[1])
    return _debatch(kernels.dst3(arr), single)


def fast_idst3(y) -> np.ndarray:
    arr, single = _as_batch(y, np.asarray(y).shape[-1])
    _check_fast_size(arr.shape[1])
    return _debatch(kernels.idst3(arr), single)


def apply_band(adj: AdjustmentMatrix, x) -> np.ndarray:
    """y = A x for a band adjustment, touching only the K-tap window per row."""
    if adj.pattern.kind is not PatternKind.BAND:
        raise PatternError(f"apply_band needs a band adjustment, got {adj.pattern.label()}")
    arr, single = _as_batch(x, adj.pattern.size)
    return _debatch(kernels.band(adj.realized, adj.pattern.taps, arr), single)


def apply_subblock(adj: AdjustmentMatrix, y) -> np.ndarray:
    """Multiply the first B coefficients by the block; the rest pass through
    bit-identically."""
    if adj.pattern.kind is not PatternKind.SUBBLOCK:
        raise PatternError(
            f"apply_subblock needs a sub-block adjustment, got {adj.pattern.label()}"
        )
    arr, single = _as_batch(y, adj.pattern.size)
    b = adj.pattern.order
    blk = np.ascontiguousarray(adj.realized[:b, :b])
    return _debatch(kernels.subblock(blk, arr), single)


def _adjustment_profile(adj: AdjustmentMatrix) -> OperationCount:
    n = adj.pattern.size
    if adj.pattern.kind is PatternKind.BAND:
        stage = opcount.band_apply(n, adj.pattern.taps)
    elif adj.pattern.kind is PatternKind.SUBBLOCK:
        stage = opcount.subblock_apply(n, adj.pattern.order)
    else:
        stage = opcount.dense_1d(n)
    core = opcount.fast_dct2_1d(n)
    return OperationCount.for_1d(
        stage.multiplications + core.multiplications,
        stage.additions + core.additions,
        n,
    )


@dataclass(frozen=True)
class AdjustedTransform:
    """A runnable approximation of DST-7 or DCT-8: adjustment + fast base."""

    target: TransformKind
    size: int
    adjustment: AdjustmentMatrix
    base_path: BasePath
    op_profile: OperationCount


def make_adjusted_transform(adj: AdjustmentMatrix) -> AdjustedTransform:
    """Wire an adjustment to its fast base path (DST-3 for pre, DCT-2 for post)."""
    _check_fast_size(adj.pattern.size)
    if adj.base is TransformKind.DCT2:
        path = BasePath.FAST_DCT2
    elif adj.base is TransformKind.DST3:
        path = BasePath.FAST_DST3_VIA_DCT2
    else:
        raise ConfigurationError(
            f"no fast path for base transform {adj.base}; use dct2 or dst3"
        )
    return AdjustedTransform(
        target=adj.target,
        size=adj.pattern.size,
        adjustment=adj,
        base_path=path,
        op_profile=_adjustment_profile(adj),
    )


def _base_forward(path: BasePath, x: np.ndarray) -> np.ndarray:
    return kernels.dct2(x) if path is BasePath.FAST_DCT2 else kernels.dst3(x)


def _base_inverse(path: BasePath, y: np.ndarray) -> np.ndarray:
    return kernels.idct2(y) if path is BasePath.FAST_DCT2 else kernels.idst3(y)


def _apply_adjustment(adj: AdjustmentMatrix, x: np.ndarray, transpose: bool) -> np.ndarray:
    mat = adj.realized.T if transpose else adj.realized
    if adj.pattern.kind is PatternKind.BAND:
        return kernels.band(np.ascontiguousarray(mat), adj.pattern.taps, x)
    if adj.pattern.kind is PatternKind.SUBBLOCK:
        b = adj.pattern.order
        return kernels.subblock(np.ascontiguousarray(mat[:b, :b]), x)
    return kernels.dense(np.ascontiguousarray(mat), x)


def forward_adjusted(t: AdjustedTransform, x) -> np.ndarray:
    arr, single = _as_batch(x, t.size)
    if t.adjustment.side is Side.PRE:
        out = _base_forward(t.base_path, _apply_adjustment(t.adjustment, arr, False))
    else:
        out = _apply_adjustment(t.adjustment, _base_forward(t.base_path, arr), False)
    return _debatch(out, single)


def inverse_adjusted(t: AdjustedTransform, y) -> np.ndarray:
    arr, single = _as_batch(y, t.size)
    if t.adjustment.side is Side.PRE:
        out = _apply_adjustment(t.adjustment, _base_inverse(t.base_path, arr), True)
    else:
        out = _base_inverse(t.base_path, _apply_adjustment(t.adjustment, arr, True))
    return _debatch(out, single)


def dense_matrix(t: AdjustedTransform) -> np.ndarray:
    """The exact H this pipeline realizes (for oracles and metrics)."""
    base = build_transform(t.adjustment.base, t.size).entries
    if t.adjustment.side is Side.PRE:
        return base @ t.adjustment.realized
    return t.adjustment.realized @ base


@dataclass(frozen=True)
class EncoderContext:
    """Sub-block DST-7 adjustments for both dimensions of a residual block.

    The DCT-8 counterparts are derived internally through the chessboard
    sign relation, so only the DST-7 designs are carried.
    """

    horizontal: AdjustmentMatrix | None = None
    vertical: AdjustmentMatrix | None = None

    def require(self, width: int, height: int) -> tuple[AdjustmentMatrix, AdjustmentMatrix]:
        if self.horizontal is None or self.vertical is None:
            raise ConfigurationError(
                "simultaneous evaluation needs sub-block adjustments for both dimensions"
            )
        for adj, size, name in (
            (self.horizontal, width, "horizontal"),
            (self.vertical, height, "vertical"),
        ):
            if adj.pattern.kind is not PatternKind.SUBBLOCK:
                raise ConfigurationError(f"{name} adjustment must be a sub-block design")
            if adj.pattern.size != size:
                raise ConfigurationError(
                    f"{name} adjustment is for size {adj.pattern.size}, block needs {size}"
                )
            if adj.side is not Side.POST or adj.base is not TransformKind.DCT2 \
                    or adj.target is not TransformKind.DST7:
                raise ConfigurationError(
                    f"{name} adjustment must be post-side dct2 -> dst7"
                )
        return self.horizontal, self.vertical


def _dct2_2d(block: np.ndarray) -> np.ndarray:
    # rows first (horizontal, length = width), then columns (vertical)
    rows = kernels.dct2(np.ascontiguousarray(block))
    return np.ascontiguousarray(kernels.dct2(np.ascontiguousarray(rows.T)).T)


def _shared_pair_rows(blk: np.ndarray, top: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """DST-7 and DCT-8 adjusted rows from one multiplication set.

    products[i,j,:] = blk[i,j] * top[j,:] feed both accumulations; the DCT-8
    variant only re-signs them (chessboard relation), so no new multiplies.
    """
    b = blk.shape[0]
    sgn = alternating_signs(b)
    products = blk[:, :, None] * top[None, :, :]
    rows7 = products.sum(axis=1)
    rows8 = (products * sgn[None, :, None]).sum(axis=1) * sgn[:, None]
    return rows7, rows8


def simultaneous_encoder_eval(block, ctx: EncoderContext) -> dict[tuple[str, str], np.ndarray]:
    """All five encoder transform candidates of a residual block.

    Returns 2-D coefficient blocks keyed by (horizontal, vertical) transform
    names: ("dct2", "dct2") plus the four DST-7/DCT-8 combinations.  The
    DCT-2 block is computed once and shared; coefficients outside the first
    B rows and first B columns are bit-identical across all five outputs.
    """
    arr = np.asarray(block, dtype=float)
    if arr.ndim != 2:
        raise ShapeError(f"expected a 2-D block, got ndim={arr.ndim}")
    height, width = arr.shape
    _check_fast_size(width)
    _check_fast_size(height)
    h_adj, v_adj = ctx.require(width, height)
    bh = h_adj.pattern.order
    bv = v_adj.pattern.order

    y0 = _dct2_2d(arr)
    blk_v = np.ascontiguousarray(v_adj.realized[:bv, :bv])
    blk_h = np.ascontiguousarray(h_adj.realized[:bh, :bh])

    rows7, rows8 = _shared_pair_rows(blk_v, y0[:bv, :])
    r7 = y0.copy()
    r7[:bv, :] = rows7
    r8 = y0.copy()
    r8[:bv, :] = rows8

    out: dict[tuple[str, str], np.ndarray] = {("dct2", "dct2"): y0}
    for v_name, plane in (("dst7", r7), ("dct8", r8)):
        cols7, cols8 = _shared_pair_rows(blk_h, np.ascontiguousarray(plane[:, :bh].T))
        y7 = plane.copy()
        y7[:, :bh] = cols7.T
        y8 = plane.copy()
        y8[:, :bh] = cols8.T
        out[("dst7", v_name)] = y7
        out[("dct8", v_name)] = y8
    return out


def naive_encoder_eval(block, ctx: EncoderContext) -> dict[tuple[str, str], np.ndarray]:
    """The same five outputs computed independently with dense separable
    transforms (oracle and benchmark baseline for the shared path)."""
    arr = np.asarray(block, dtype=float)
    height, width = arr.shape
    h_adj, v_adj = ctx.require(width, height)
    c2_w = build_transform(TransformKind.DCT2, width).entries
    c2_h = build_transform(TransformKind.DCT2, height).entries
    h_mats = {
        "dst7": h_adj.realized @ c2_w,
        "dct8": dct8_adjustment_from_dst7(h_adj).realized @ c2_w,
    }
    v_mats = {
        "dst7": v_adj.realized @ c2_h,
        "dct8": dct8_adjustment_from_dst7(v_adj).realized @ c2_h,
    }

    def sep2d(tv: np.ndarray, th: np.ndarray) -> np.ndarray:
        rows = kernels.dense(np.ascontiguousarray(th), arr)
        return np.ascontiguousarray(
            kernels.dense(np.ascontiguousarray(tv), np.ascontiguousarray(rows.T)).T
        )

    out = {("dct2", "dct2"): sep2d(c2_h, c2_w)}
    for h_name in ("dst7", "dct8"):
        for v_name in ("dst7", "dct8"):
            out[(h_name, v_name)] = sep2d(v_mats[v_name], h_mats[h_name])
    return out


_DESCRIPTOR_TABLE = {
    "dense_1d": opcount.dense_1d,
    "dense_2d": opcount.dense_2d,
    "fast_dct2_1d": opcount.fast_dct2_1d,
    "fast_dst3_1d": opcount.fast_dst3_1d,
    "fast_dct2_2d": opcount.fast_dct2_2d,
    "band_apply": opcount.band_apply,
    "subblock_apply": opcount.subblock_apply,
    "band_adjusted_1d": opcount.band_adjusted_1d,
    "subblock_adjusted_1d": opcount.subblock_adjusted_1d,
    "band_adjusted_2d": opcount.band_adjusted_2d,
    "subblock_adjusted_2d": opcount.subblock_adjusted_2d,
    "simultaneous_2d": opcount.simultaneous_2d,
    "naive_five_2d": opcount.naive_five_2d,
}


def op_count(descriptor) -> OperationCount:
    """Analytic operation count of a pipeline.

    Accepts an AdjustedTransform or a descriptor tuple such as
    ("dense_2d", 32, 32) or ("subblock_adjusted_2d", 64, 64, 8).
    """
    if isinstance(descriptor, AdjustedTransform):
        return descriptor.op_profile
    name, *args = descriptor
    try:
        fn = _DESCRIPTOR_TABLE[name]
    except KeyError:
        raise ConfigurationError(f"unknown pipeline descriptor {name!r}") from None
    return fn(*args)
