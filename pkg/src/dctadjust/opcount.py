"""Analytic operation counts for transform pipelines.

Counting convention (applied uniformly): multiplications by structural 0
and +-1 entries are free (identity parts of adjustments, reversals, sign
flips); every other multiplication counts, including by 1/sqrt(2) scale
factors.  Additions and subtractions are counted together.  Counts assume
generic values for in-pattern adjustment entries.

The dense baseline is the full matrix-vector product: N multiplications per
coefficient in 1-D, and 2N per coefficient for a separable N x N 2-D
transform (row pass + column pass).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class OperationCount:
    multiplications: int
    additions: int
    per_coefficient_mults: Fraction

    def __post_init__(self):
        if self.multiplications < 0 or self.additions < 0:
            raise ValueError("negative operation count")

    @staticmethod
    def for_1d(mults: int, adds: int, size: int) -> "OperationCount":
        return OperationCount(mults, adds, Fraction(mults, size))

    @staticmethod
    def for_2d(mults: int, adds: int, width: int, height: int) -> "OperationCount":
        return OperationCount(mults, adds, Fraction(mults, width * height))

    def __add__(self, other: "OperationCount") -> "OperationCount":
        raise TypeError("combine raw mult/add totals explicitly; "
                        "per-coefficient normalization is not additive")


def _fast_dct2_ops(n: int) -> tuple[int, int]:
    if n == 1:
        return 0, 0
    if n == 2:
        return 2, 2
    if n == 4:
        return 6, 8
    half = n // 2
    m2, a2 = _fast_dct2_ops(half)
    m4, a4 = _fast_dct4_ops(half)
    return n + m2 + m4, n + a2 + a4


def _fast_dct4_ops(m: int) -> tuple[int, int]:
    if m == 2:
        return 4, 2
    half = m // 2
    m2, a2 = _fast_dct2_ops(half)
    # pair rotations: 4 mults + 2 adds each; output butterflies: 2 mults +
    # 2 adds each; the last output is an alternating sum (half - 1 adds)
    mults = 4 * half + 2 * m2 + 2 * (half - 1)
    adds = 2 * half + 2 * a2 + 2 * (half - 1) + (half - 1)
    return mults, adds


def dense_1d(n: int) -> OperationCount:
    return OperationCount.for_1d(n * n, n * (n - 1), n)


def dense_2d(width: int, height: int) -> OperationCount:
    mults = height * width * width + width * height * height
    adds = height * width * (width - 1) + width * height * (height - 1)
    return OperationCount.for_2d(mults, adds, width, height)


def fast_dct2_1d(n: int) -> OperationCount:
    return OperationCount.for_1d(*_fast_dct2_ops(n), n)


def fast_dst3_1d(n: int) -> OperationCount:
    # reversal and sign flips are free: identical cost to the DCT-2 core
    return fast_dct2_1d(n)


def band_apply(n: int, taps: int) -> OperationCount:
    nnz = sum(min(n - 1, i + taps - 1) - max(0, i - taps + 1) + 1 for i in range(n))
    return OperationCount.for_1d(nnz, nnz - n, n)


def subblock_apply(n: int, order: int) -> OperationCount:
    return OperationCount.for_1d(order * order, order * (order - 1), n)


def band_adjusted_1d(n: int, taps: int) -> OperationCount:
    b = band_apply(n, taps)
    t = fast_dst3_1d(n)
    return OperationCount.for_1d(
        b.multiplications + t.multiplications, b.additions + t.additions, n
    )


def subblock_adjusted_1d(n: int, order: int) -> OperationCount:
    s = subblock_apply(n, order)
    t = fast_dct2_1d(n)
    return OperationCount.for_1d(
        s.multiplications + t.multiplications, s.additions + t.additions, n
    )


def _separable_2d(one_d: OperationCount, width: int, height: int) -> OperationCount:
    # width-point transform on each of `height` rows, then height-point on
    # each of `width` columns; here used with width == height
    mults = height * one_d.multiplications + width * one_d.multiplications
    adds = height * one_d.additions + width * one_d.additions
    return OperationCount.for_2d(mults, adds, width, height)


def fast_dct2_2d(width: int, height: int) -> OperationCount:
    mults = height * fast_dct2_1d(width).multiplications \
        + width * fast_dct2_1d(height).multiplications
    adds = height * fast_dct2_1d(width).additions \
        + width * fast_dct2_1d(height).additions
    return OperationCount.for_2d(mults, adds, width, height)


def band_adjusted_2d(width: int, height: int, taps: int) -> OperationCount:
    mults = height * band_adjusted_1d(width, taps).multiplications \
        + width * band_adjusted_1d(height, taps).multiplications
    adds = height * band_adjusted_1d(width, taps).additions \
        + width * band_adjusted_1d(height, taps).additions
    return OperationCount.for_2d(mults, adds, width, height)


def subblock_adjusted_2d(width: int, height: int, order: int) -> OperationCount:
    mults = height * subblock_adjusted_1d(width, order).multiplications \
        + width * subblock_adjusted_1d(height, order).multiplications
    adds = height * subblock_adjusted_1d(width, order).additions \
        + width * subblock_adjusted_1d(height, order).additions
    return OperationCount.for_2d(mults, adds, width, height)


def simultaneous_2d(width: int, height: int, order: int) -> OperationCount:
    """All five encoder outputs (2-D DCT-2 plus the four DST-7/DCT-8
    combinations) through the shared-computation path.

    The DCT-2 coefficients are computed once; the vertical adjustment pair
    shares one multiplication set (order^2 * width products reused for both
    sign variants), and each of the two vertically adjusted planes needs one
    horizontal multiplication set (order^2 * height products).
    """
    b = order
    base = fast_dct2_2d(width, height)
    vert_mults = b * b * width
    vert_adds = 2 * b * (b - 1) * width          # two signed accumulations
    horiz_mults = 2 * b * b * height
    horiz_adds = 4 * b * (b - 1) * height
    return OperationCount.for_2d(
        base.multiplications + vert_mults + horiz_mults,
        base.additions + vert_adds + horiz_adds,
        width, height,
    )


def naive_five_2d(width: int, height: int) -> OperationCount:
    """Five independent dense separable 2-D transforms (the baseline the
    shared path replaces)."""
    d = dense_2d(width, height)
    return OperationCount.for_2d(5 * d.multiplications, 5 * d.additions, width, height)
