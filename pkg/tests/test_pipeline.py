"""Fast transform paths against dense oracles, and the encoder evaluation."""
import numpy as np
import pytest

from dctadjust.design import (
    DesignConfig,
    Side,
    SparsityPattern,
    identity_adjustment,
    optimize_adjustment,
    pattern_schedule_template,
    givens_to_matrix,
    AdjustmentMatrix,
)
from dctadjust.errors import (
    ConfigurationError,
    InvalidDimensionError,
    PatternError,
)
from dctadjust.pipeline import (
    EncoderContext,
    apply_band,
    apply_subblock,
    dense_matrix,
    fast_dct2,
    fast_dst3_via_dct2,
    fast_idct2,
    fast_idst3,
    forward_adjusted,
    inverse_adjusted,
    make_adjusted_transform,
    naive_encoder_eval,
    op_count,
    simultaneous_encoder_eval,
)
from dctadjust.transforms import TransformKind, build_transform

SIZES = [4, 8, 16, 32, 64]
RNG = np.random.default_rng(2024)


def _random_adjustment(pattern, side, base, seed=3):
    template = pattern_schedule_template(pattern)
    rng = np.random.default_rng(seed)
    sched = template.with_angles(rng.uniform(-0.35, 0.35, template.n_rotations))
    return AdjustmentMatrix(
        pattern=pattern, side=side, base=base, target=TransformKind.DST7,
        schedule=sched, realized=givens_to_matrix(sched),
    )


class TestFastDct2:
    @pytest.mark.parametrize("size", SIZES)
    def test_matches_dense_oracle(self, size):
        t = build_transform(TransformKind.DCT2, size).entries
        x = RNG.standard_normal((100, size))
        assert np.max(np.abs(fast_dct2(x) - x @ t.T)) < 1e-10

    def test_zero_maps_to_zero(self):
        assert np.array_equal(fast_dct2(np.zeros(16)), np.zeros(16))

    @pytest.mark.parametrize("size", SIZES)
    def test_constant_vector(self, size):
        c = 1.7
        y = fast_dct2(np.full(size, c))
        assert y[0] == pytest.approx(c * np.sqrt(size), abs=1e-10)
        assert np.max(np.abs(y[1:])) < 1e-10

    def test_inverse_roundtrip(self):
        x = RNG.standard_normal(32)
        assert np.max(np.abs(fast_idct2(fast_dct2(x)) - x)) < 1e-12

    @pytest.mark.parametrize("size", [0, 2, 3, 12, 128])
    def test_unsupported_sizes(self, size):
        with pytest.raises(InvalidDimensionError):
            fast_dct2(np.zeros(max(size, 1)) if size else np.zeros((1, 1))[:, :0])

    def test_mult_count_below_dense(self):
        for size in SIZES:
            fast = op_count(("fast_dct2_1d", size))
            assert fast.multiplications < size * size


class TestFastDst3:
    @pytest.mark.parametrize("size", SIZES)
    def test_matches_dense_oracle(self, size):
        t = build_transform(TransformKind.DST3, size).entries
        x = RNG.standard_normal((100, size))
        assert np.max(np.abs(fast_dst3_via_dct2(x) - x @ t.T)) < 1e-10

    def test_zero(self):
        assert np.array_equal(fast_dst3_via_dct2(np.zeros(16)), np.zeros(16))

    def test_inverse(self):
        t = build_transform(TransformKind.DST3, 32).entries
        y = RNG.standard_normal((20, 32))
        assert np.max(np.abs(fast_idst3(y) - y @ t)) < 1e-10

    def test_same_mult_count_as_dct2(self):
        for size in SIZES:
            assert op_count(("fast_dst3_1d", size)).multiplications == \
                op_count(("fast_dct2_1d", size)).multiplications


class TestApplyBand:
    def test_taps1_is_identity(self):
        adj = identity_adjustment(
            SparsityPattern.band(1, 16), Side.PRE, TransformKind.DST3, TransformKind.DST7)
        x = RNG.standard_normal(16)
        assert np.array_equal(apply_band(adj, x), x)

    @pytest.mark.parametrize("taps,size", [(2, 8), (4, 32), (6, 32)])
    def test_matches_dense(self, taps, size):
        adj = _random_adjustment(SparsityPattern.band(taps, size), Side.PRE, TransformKind.DST3)
        x = RNG.standard_normal((50, size))
        assert np.max(np.abs(apply_band(adj, x) - x @ adj.realized.T)) < 1e-12

    def test_mult_bound(self):
        c = op_count(("band_apply", 32, 4))
        assert c.multiplications <= (2 * 4 - 1) * 32 == 224

    def test_pattern_mismatch(self):
        adj = identity_adjustment(
            SparsityPattern.subblock(4, 16), Side.POST, TransformKind.DCT2, TransformKind.DST7)
        with pytest.raises(PatternError):
            apply_band(adj, np.zeros(16))


class TestApplySubblock:
    def test_tail_bit_identical(self):
        adj = _random_adjustment(SparsityPattern.subblock(8, 32), Side.POST, TransformKind.DCT2)
        y = RNG.standard_normal((40, 32))
        out = apply_subblock(adj, y)
        assert np.array_equal(out[:, 8:], y[:, 8:])
        assert np.max(np.abs(out - y @ adj.realized.T)) < 1e-12

    def test_zero_head_passes_through(self):
        adj = _random_adjustment(SparsityPattern.subblock(8, 32), Side.POST, TransformKind.DCT2)
        y = RNG.standard_normal(32)
        y[:8] = 0.0
        assert np.array_equal(apply_subblock(adj, y), y)

    def test_full_order_is_dense(self):
        adj = _random_adjustment(SparsityPattern.subblock(8, 8), Side.POST, TransformKind.DCT2)
        y = RNG.standard_normal(8)
        assert np.max(np.abs(apply_subblock(adj, y) - adj.realized @ y)) < 1e-12

    def test_mult_bound_64(self):
        c = op_count(("subblock_apply", 64, 8))
        assert c.multiplications == 64
        assert c.per_coefficient_mults == 1

    def test_pattern_mismatch(self):
        adj = identity_adjustment(
            SparsityPattern.band(4, 16), Side.PRE, TransformKind.DST3, TransformKind.DST7)
        with pytest.raises(PatternError):
            apply_subblock(adj, np.zeros(16))


class TestAdjustedPipelines:
    @pytest.mark.parametrize("side,pattern_kind", [("pre", "band"), ("post", "subblock")])
    @pytest.mark.parametrize("size", [16, 32, 64])
    def test_forward_matches_dense_and_roundtrips(self, side, pattern_kind, size):
        if pattern_kind == "band":
            adj = _random_adjustment(
                SparsityPattern.band(6, size), Side.PRE, TransformKind.DST3)
        else:
            adj = _random_adjustment(
                SparsityPattern.subblock(8, size), Side.POST, TransformKind.DCT2)
        t = make_adjusted_transform(adj)
        h = dense_matrix(t)
        x = RNG.standard_normal((50, size))
        y = forward_adjusted(t, x)
        assert np.max(np.abs(y - x @ h.T)) < 1e-9
        back = inverse_adjusted(t, y)
        assert np.max(np.abs(back - x)) < 1e-9

    def test_identity_adjustment_equals_base(self):
        adj = identity_adjustment(
            SparsityPattern.band(6, 32), Side.PRE, TransformKind.DST3, TransformKind.DST7)
        t = make_adjusted_transform(adj)
        x = RNG.standard_normal(32)
        assert np.array_equal(forward_adjusted(t, x), fast_dst3_via_dct2(x))

    def test_linearity(self):
        adj = _random_adjustment(SparsityPattern.subblock(8, 32), Side.POST, TransformKind.DCT2)
        t = make_adjusted_transform(adj)
        x1 = RNG.standard_normal(32)
        x2 = RNG.standard_normal(32)
        lhs = forward_adjusted(t, 2.5 * x1 - 0.7 * x2)
        rhs = 2.5 * forward_adjusted(t, x1) - 0.7 * forward_adjusted(t, x2)
        assert np.max(np.abs(lhs - rhs)) < 1e-9

    def test_designed_pipeline_matches_its_design(self):
        b = build_transform(TransformKind.DST3, 16)
        d = build_transform(TransformKind.DST7, 16)
        adj = optimize_adjustment(
            b, d, SparsityPattern.band(4, 16), Side.PRE,
            DesignConfig(restarts=0, max_iterations=100))
        t = make_adjusted_transform(adj)
        h = dense_matrix(t)
        x = RNG.standard_normal(16)
        assert np.max(np.abs(forward_adjusted(t, x) - h @ x)) < 1e-9

    def test_unsupported_base(self):
        adj = identity_adjustment(
            SparsityPattern.band(4, 16), Side.PRE, TransformKind.DST2, TransformKind.DST7)
        with pytest.raises(ConfigurationError):
            make_adjusted_transform(adj)


def _encoder_ctx(size, seed=9):
    adj = _random_adjustment(
        SparsityPattern.subblock(8, size), Side.POST, TransformKind.DCT2, seed)
    return EncoderContext(horizontal=adj, vertical=adj)


class TestSimultaneousEval:
    def test_zero_block(self):
        ctx = _encoder_ctx(32)
        out = simultaneous_encoder_eval(np.zeros((32, 32)), ctx)
        assert len(out) == 5
        for block in out.values():
            assert np.array_equal(block, np.zeros((32, 32)))

    def test_matches_naive_five(self):
        ctx = _encoder_ctx(32)
        block = RNG.standard_normal((32, 32))
        fast = simultaneous_encoder_eval(block, ctx)
        naive = naive_encoder_eval(block, ctx)
        assert set(fast) == set(naive)
        for key in naive:
            assert np.max(np.abs(fast[key] - naive[key])) < 1e-9

    def test_untouched_coefficients_bit_identical(self):
        ctx = _encoder_ctx(32)
        block = RNG.standard_normal((32, 32))
        out = simultaneous_encoder_eval(block, ctx)
        ref = out[("dct2", "dct2")]
        for key, plane in out.items():
            assert np.array_equal(plane[8:, 8:], ref[8:, 8:]), key

    def test_changed_fraction_bound(self):
        ctx = _encoder_ctx(32)
        block = RNG.standard_normal((32, 32))
        out = simultaneous_encoder_eval(block, ctx)
        ref = out[("dct2", "dct2")]
        changed = np.sum(out[("dst7", "dst7")] != ref)
        assert changed / ref.size <= 1.0 - (24 * 24) / (32 * 32)  # 43.75%

    def test_rectangular_block(self):
        h_adj = _random_adjustment(
            SparsityPattern.subblock(8, 64), Side.POST, TransformKind.DCT2, 5)
        v_adj = _random_adjustment(
            SparsityPattern.subblock(8, 32), Side.POST, TransformKind.DCT2, 6)
        ctx = EncoderContext(horizontal=h_adj, vertical=v_adj)
        block = RNG.standard_normal((32, 64))
        fast = simultaneous_encoder_eval(block, ctx)
        naive = naive_encoder_eval(block, ctx)
        for key in naive:
            assert np.max(np.abs(fast[key] - naive[key])) < 1e-9

    def test_missing_adjustment(self):
        ctx = EncoderContext(horizontal=None, vertical=None)
        with pytest.raises(ConfigurationError):
            simultaneous_encoder_eval(np.zeros((32, 32)), ctx)

    def test_wrong_size_adjustment(self):
        ctx = _encoder_ctx(32)
        with pytest.raises(ConfigurationError):
            simultaneous_encoder_eval(np.zeros((64, 64)), ctx)


class TestOpCount:
    def test_dense_1d_32(self):
        assert op_count(("dense_1d", 32)).per_coefficient_mults == 32

    def test_dense_2d_32(self):
        assert op_count(("dense_2d", 32, 32)).per_coefficient_mults == 64

    def test_fast_2d_64_subblock(self):
        c = op_count(("subblock_adjusted_2d", 64, 64, 8))
        assert c.per_coefficient_mults < 40

    def test_fast_paths_beat_dense(self):
        # the core beats dense from N=8 up; adjusted pipelines from N=16 up
        # (a 6-tap window covers most of an 8-point row, so nothing smaller
        # can win there, and the band designs target 32/64-point transforms)
        for size in (8, 16, 32, 64):
            assert op_count(("fast_dct2_1d", size)).multiplications \
                < op_count(("dense_1d", size)).multiplications
        for size in (16, 32, 64):
            assert op_count(("band_adjusted_1d", size, 6)).multiplications \
                < op_count(("dense_1d", size)).multiplications
            assert op_count(("subblock_adjusted_1d", size, 8)).multiplications \
                < op_count(("dense_1d", size)).multiplications

    def test_adjusted_transform_profile(self):
        adj = _random_adjustment(SparsityPattern.subblock(8, 32), Side.POST, TransformKind.DCT2)
        t = make_adjusted_transform(adj)
        assert op_count(t) == t.op_profile
        assert t.op_profile.multiplications == \
            op_count(("subblock_adjusted_1d", 32, 8)).multiplications

    def test_unknown_descriptor(self):
        with pytest.raises(ConfigurationError):
            op_count(("warp_drive", 8))
