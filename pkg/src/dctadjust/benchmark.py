"""Wall-clock throughput of transform pipelines vs the dense baseline.

Methodology: every pipeline is first verified against its dense oracle, then
timed on identical pseudo-random input batches (one batch per seed and size,
reused across pipelines).  Each sample times enough repetitions of the
batched call to exceed a minimum duration; throughput is coefficients per
second, the reported value is the median over samples, and dispersion is the
relative interquartile range.  Ratios are median throughput divided by the
median throughput of the dense baseline for the same size and direction.

Timing loops are single-threaded; absolute ratios are machine-dependent and
only orderings are asserted anywhere.
"""
from __future__ import annotations

import time
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .design import (
    AdjustmentMatrix,
    Side,
    SparsityPattern,
    givens_to_matrix,
    pattern_schedule_template,
)
from .errors import ConfigurationError
from .pipeline import (
    EncoderContext,
    dense_matrix,
    make_adjusted_transform,
    naive_encoder_eval,
    simultaneous_encoder_eval,
)
from .transforms import TransformKind

DEFAULT_PIPELINES = ("band4", "band6", "subblock8", "multiple")


@dataclass(frozen=True)
class BenchReport:
    pipeline: str
    size: int
    direction: str
    coefficients_per_second: float
    ratio_vs_dense: float
    samples: int
    dispersion: float

    def __post_init__(self):
        if self.samples < 30:
            raise ConfigurationError("need at least 30 samples per measurement")


def _random_pattern_adjustment(
    pattern: SparsityPattern, side: Side, base: TransformKind, seed: int
) -> AdjustmentMatrix:
    """A valid (orthogonal, pattern-conformant) adjustment with random small
    angles; benchmark speed does not depend on the designed values."""
    template = pattern_schedule_template(pattern)
    rng = np.random.default_rng([seed, pattern.size, template.n_rotations])
    schedule = template.with_angles(rng.uniform(-0.3, 0.3, template.n_rotations))
    return AdjustmentMatrix(
        pattern=pattern,
        side=side,
        base=base,
        target=TransformKind.DST7,
        schedule=schedule,
        realized=givens_to_matrix(schedule),
    )


def _measure(fn, samples: int, warmup: int, min_time: float) -> np.ndarray:
    """Per-sample seconds per call, with the repetition count auto-scaled so
    each sample exceeds `min_time`."""
    reps = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(reps):
            fn()
        elapsed = time.perf_counter() - t0
        if elapsed >= min_time:
            break
        if elapsed < 1e-6:
            warnings.warn("timer resolution insufficient for batch size; "
                          "increasing repetitions", stacklevel=2)
        reps = max(reps * 2, int(reps * min_time / max(elapsed, 1e-9)) + 1)
    for _ in range(warmup):
        for _ in range(reps):
            fn()
    times = np.empty(samples)
    for s in range(samples):
        t0 = time.perf_counter()
        for _ in range(reps):
            fn()
        times[s] = (time.perf_counter() - t0) / reps
    return times


def _throughput_stats(times: np.ndarray, coeffs_per_call: int) -> tuple[float, float]:
    thr = coeffs_per_call / times
    median = float(np.median(thr))
    q25, q75 = np.percentile(thr, [25, 75])
    return median, float((q75 - q25) / median)


def _pipeline_closures(ker, adj: AdjustmentMatrix, x: np.ndarray):
    """(forward, inverse) closures over the raw kernel calls, plus the dense
    H for oracle checks."""
    t = make_adjusted_transform(adj)
    h = dense_matrix(t)
    if adj.pattern.kind.value == "band":
        a = np.ascontiguousarray(adj.realized)
        at = np.ascontiguousarray(adj.realized.T)
        taps = adj.pattern.taps
        fwd = lambda: ker.dst3(ker.band(a, taps, x))
        inv = lambda: ker.band(at, taps, ker.idst3(x))
    else:
        b = adj.pattern.order
        blk = np.ascontiguousarray(adj.realized[:b, :b])
        blk_t = np.ascontiguousarray(blk.T)
        fwd = lambda: ker.subblock(blk, ker.dct2(x))
        inv = lambda: ker.idct2(ker.subblock(blk_t, x))
    return fwd, inv, h


def run_benchmark(
    pipelines: tuple[str, ...] = DEFAULT_PIPELINES,
    sizes: tuple[int, ...] = (32, 64),
    samples: int = 31,
    warmup: int = 3,
    seed: int = 0,
    min_time: float = 0.01,
    batch: int = 2048,
    backend: str | None = None,
) -> list[BenchReport]:
    """Time the requested pipelines and the dense baseline on shared inputs.

    `backend` names the kernel backend to bench ("compiled" or "python",
    default: whatever was selected at import).
    """
    backend = backend or kernels.BACKEND
    reports: list[BenchReport] = []
    rng = np.random.default_rng(seed)

    with kernels.use_backend(backend) as ker:
        for size in sizes:
            x = np.ascontiguousarray(rng.standard_normal((batch, size)))
            adjustments = {
                "band4": _random_pattern_adjustment(
                    SparsityPattern.band(4, size), Side.PRE, TransformKind.DST3, seed),
                "band6": _random_pattern_adjustment(
                    SparsityPattern.band(6, size), Side.PRE, TransformKind.DST3, seed),
                "subblock8": _random_pattern_adjustment(
                    SparsityPattern.subblock(8, size), Side.POST, TransformKind.DCT2, seed),
            }

            # dense baseline: full matrix-vector products with the exact H of
            # the sub-block pipeline (cost depends only on the size)
            h_ref = np.ascontiguousarray(dense_matrix(
                make_adjusted_transform(adjustments["subblock8"])))
            h_ref_t = np.ascontiguousarray(h_ref.T)
            dense_median: dict[str, float] = {}
            for direction, mat in (("forward", h_ref), ("inverse", h_ref_t)):
                times = _measure(lambda m=mat: ker.dense(m, x), samples, warmup, min_time)
                med, disp = _throughput_stats(times, batch * size)
                dense_median[direction] = med
                reports.append(BenchReport(
                    pipeline="dense", size=size, direction=direction,
                    coefficients_per_second=med, ratio_vs_dense=1.0,
                    samples=samples, dispersion=disp,
                ))

            for name in pipelines:
                if name == "multiple":
                    continue
                fwd, inv, h = _pipeline_closures(ker, adjustments[name], x)
                probe = x[:64]
                for direction, fn, oracle in (
                    ("forward", fwd, probe @ h.T),
                    ("inverse", inv, probe @ h),
                ):
                    got = fn()[:64]
                    if np.max(np.abs(got - oracle)) >= 1e-9:
                        raise AssertionError(
                            f"{name} {direction} failed its oracle check; not timing it"
                        )
                    times = _measure(fn, samples, warmup, min_time)
                    med, disp = _throughput_stats(times, batch * size)
                    reports.append(BenchReport(
                        pipeline=name, size=size, direction=direction,
                        coefficients_per_second=med,
                        ratio_vs_dense=med / dense_median[direction],
                        samples=samples, dispersion=disp,
                    ))

            if "multiple" in pipelines:
                reports.append(_bench_multiple(
                    adjustments["subblock8"], rng, samples, warmup, min_time))
    return reports


def _bench_multiple(subblock_adj, rng, samples, warmup, min_time) -> BenchReport:
    """Shared five-transform evaluation vs five independent dense separable
    2-D transforms, throughput in produced coefficients per second."""
    size = subblock_adj.pattern.size
    ctx = EncoderContext(horizontal=subblock_adj, vertical=subblock_adj)
    n_blocks = max(1, 512 // size)
    blocks = rng.standard_normal((n_blocks, size, size))

    shared = simultaneous_encoder_eval(blocks[0], ctx)
    naive = naive_encoder_eval(blocks[0], ctx)
    for key in naive:
        if np.max(np.abs(shared[key] - naive[key])) >= 1e-9:
            raise AssertionError("shared encoder path failed its oracle check")

    def shared_all():
        for b in blocks:
            simultaneous_encoder_eval(b, ctx)

    def naive_all():
        for b in blocks:
            naive_encoder_eval(b, ctx)

    coeffs = 5 * n_blocks * size * size
    t_shared = _measure(shared_all, samples, warmup, min_time)
    t_naive = _measure(naive_all, samples, warmup, min_time)
    med_s, disp = _throughput_stats(t_shared, coeffs)
    med_n, _ = _throughput_stats(t_naive, coeffs)
    return BenchReport(
        pipeline="multiple", size=size, direction="forward",
        coefficients_per_second=med_s,
        ratio_vs_dense=med_s / med_n,
        samples=samples, dispersion=disp,
    )


def report_table(reports: list[BenchReport]) -> str:
    """Ratio table in the adjustment-type x direction x size layout."""
    sizes = sorted({r.size for r in reports})
    names: list[str] = []
    for r in reports:
        if r.pipeline not in names:
            names.append(r.pipeline)
    header = ["pipeline"] + [
        f"{d}/{s}" for d in ("forward", "inverse") for s in sizes
    ]
    lines = ["  ".join(f"{h:>12s}" for h in header)]
    for name in names:
        row = [f"{name:>12s}"]
        for d in ("forward", "inverse"):
            for s in sizes:
                hit = [r for r in reports
                       if r.pipeline == name and r.direction == d and r.size == s]
                row.append(f"{hit[0].ratio_vs_dense:12.2f}" if hit else f"{'-':>12s}")
        lines.append("  ".join(row))
    return "\n".join(lines)
