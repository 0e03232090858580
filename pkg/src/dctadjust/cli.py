"""Command-line interface.

Subcommands: gen (exact matrices), design (adjustment optimization), verify
(identity/orthogonality suite), apply (run transforms on vector files), eval
(coding-gain and basis reports), bench (throughput ratios), export (figure
data: gray maps, pattern masks, basis CSVs).

Exit codes: 0 success, 2 usage error, 3 I/O or parse error, 4 verification
failure.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import benchmark, matio
from .design import (
    AdjustmentMatrix,
    DesignConfig,
    Side,
    SparsityPattern,
    dct8_adjustment_from_dst7,
    default_alpha,
    discover_sparsity,
    givens_to_matrix,
    optimize_adjustment,
    pattern_schedule_template,
    pattern_violation,
    weighted_error,
)
from .errors import DctAdjustError, MatrixFormatError
from .evaluate import (
    CovarianceKind,
    basis_comparison,
    coding_gain,
    klt,
    residual_covariance_model,
)
from .pipeline import forward_adjusted, inverse_adjusted, make_adjusted_transform
from .transforms import (
    TransformKind,
    build_transform,
    compose_pipeline,
    orthonormality_error,
    sign_flip_matrices,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_VERIFY = 4

DEFAULT_VERIFY_SIZES = (4, 8, 16, 32, 64)


class UsageError(Exception):
    pass


def _parse_kind(value: str) -> TransformKind:
    try:
        return TransformKind(value.lower())
    except ValueError:
        raise UsageError(
            f"--kind must be one of {[k.value for k in TransformKind]}, got {value!r}"
        ) from None


def _parse_side(value: str) -> Side:
    try:
        return Side(value.lower())
    except ValueError:
        raise UsageError(f"--side must be 'pre' or 'post', got {value!r}") from None


def _check_size(size: int) -> int:
    if size < 1:
        raise UsageError(f"--size must be >= 1, got {size}")
    return size


def _parse_sizes(value: str) -> list[int]:
    try:
        sizes = [int(p) for p in value.split(",") if p]
    except ValueError:
        raise UsageError(f"--sizes must be comma-separated integers, got {value!r}") from None
    if not sizes or any(s < 1 for s in sizes):
        raise UsageError(f"--sizes entries must be >= 1, got {value!r}")
    return sizes


def _design_config(args) -> DesignConfig:
    return DesignConfig(
        alpha=args.alpha,
        max_iterations=args.max_iterations,
        tolerance=args.tolerance,
        restarts=args.restarts,
        rng_seed=args.seed,
    )


def cmd_gen(args) -> int:
    kind = _parse_kind(args.kind)
    size = _check_size(args.size)
    t = build_transform(kind, size)
    matio.write_matrix(args.out if args.out else sys.stdout, t.entries)
    return EXIT_OK


def cmd_design(args) -> int:
    if args.from_dst7:
        adj = matio.read_adjustment(args.from_dst7)
        derived = dct8_adjustment_from_dst7(adj)
        matio.write_adjustment(args.out, derived)
        print(f"derived {derived.target.value} adjustment from {args.from_dst7} "
              "(chessboard sign flip, no optimization run)")
        return EXIT_OK

    base = _parse_kind(args.base)
    target = _parse_kind(args.target)
    side = _parse_side(args.side)
    size = _check_size(args.size)
    pattern = SparsityPattern.from_label(args.pattern, size)
    b = build_transform(base, size)
    d = build_transform(target, size)
    adj = optimize_adjustment(b, d, pattern, side, _design_config(args))
    matio.write_adjustment(args.out, adj)

    h = compose_pipeline(np.eye(size), b, adj.realized) if side is Side.PRE \
        else compose_pipeline(adj.realized, b, np.eye(size))
    comp = basis_comparison(h, d.entries, args.alpha)
    nnz = [int(np.sum(np.abs(adj.realized[i]) > 1e-12)) for i in range(size)]
    print(f"pattern {pattern.label()}  side {side.value}  {base.value} -> {target.value}  N={size}")
    print(f"objective {adj.objective:.6e}  identity baseline {adj.identity_objective:.6e}")
    print(f"converged {adj.converged}  restart {adj.restart_index}  "
          f"sweeps {max(0, len(adj.objective_trace) - 1)}")
    if not adj.converged:
        print("warning: optimizer hit the iteration limit; result is best-so-far")
    print("per-row relative l2 error: "
          + " ".join(f"{e:.4f}" for e in comp.per_row_l2_error))
    print("non-zeros per row: " + " ".join(str(v) for v in nnz))
    return EXIT_OK


def _verify_checks(sizes: list[int], seed: int):
    """Yield (name, error, threshold) for the full invariant suite."""
    for n in sizes:
        mats = {k: build_transform(k, n) for k in TransformKind}
        for k, t in mats.items():
            yield f"orthonormality {k.value} N={n}", orthonormality_error(t.entries), 1e-10
        sf = sign_flip_matrices(n)
        r = sf.reversal.astype(float)
        s = sf.signs.astype(float)
        c2 = mats[TransformKind.DCT2].entries
        s7 = mats[TransformKind.DST7].entries
        checks = [
            ("T_C3 = T_C2^T", mats[TransformKind.DCT3].entries - c2.T),
            ("T_S2 = R T_C2 S", mats[TransformKind.DST2].entries - r @ c2 @ s),
            ("T_S3 = S T_C2^T R", mats[TransformKind.DST3].entries - s @ c2.T @ r),
            ("T_C8 = S T_S7 R", mats[TransformKind.DCT8].entries - s @ s7 @ r),
            ("S T_C2 = T_C2 R", s @ c2 - c2 @ r),
        ]
        for label, diff in checks:
            yield f"identity {label} N={n}", float(np.max(np.abs(diff))), 1e-12
        yield f"involution R^2=I N={n}", float(np.max(np.abs(sf.reversal @ sf.reversal - np.eye(n, dtype=np.int64)))), 0.5
        yield f"involution S^2=I N={n}", float(np.max(np.abs(sf.signs @ sf.signs - np.eye(n, dtype=np.int64)))), 0.5
        yield f"sign convention dct2 (0,0)>0 N={n}", 0.0 if c2[0, 0] > 0 else 1.0, 0.5
        yield f"sign convention dst7 (0,0)>0 N={n}", 0.0 if s7[0, 0] > 0 else 1.0, 0.5

        rng = np.random.default_rng([seed, n])
        for pattern in (SparsityPattern.band(min(6, n), n),
                        SparsityPattern.subblock(min(8, n), n)):
            template = pattern_schedule_template(pattern)
            sched = template.with_angles(rng.uniform(-0.4, 0.4, template.n_rotations))
            realized = givens_to_matrix(sched)
            yield (f"schedule orthogonality {pattern.label()} N={n}",
                   orthonormality_error(realized), 1e-12)
            yield (f"schedule conformance {pattern.label()} N={n}",
                   pattern_violation(pattern, realized), 1e-12)

        # Eq.(5) sign flip: derived DCT-8 adjustment reproduces the DST-7
        # weighted error exactly, for any post-side sub-block adjustment
        pattern = SparsityPattern.subblock(min(8, n), n)
        template = pattern_schedule_template(pattern)
        sched = template.with_angles(rng.uniform(-0.4, 0.4, template.n_rotations))
        c7 = AdjustmentMatrix(
            pattern=pattern, side=Side.POST, base=TransformKind.DCT2,
            target=TransformKind.DST7, schedule=sched,
            realized=givens_to_matrix(sched),
        )
        c8 = dct8_adjustment_from_dst7(c7)
        alpha = default_alpha(n)
        e7 = weighted_error(c7.realized @ c2, s7, alpha)
        e8 = weighted_error(c8.realized @ c2, mats[TransformKind.DCT8].entries, alpha)
        yield f"eq5 error equality N={n}", abs(e7 - e8), 1e-12
        twice = dct8_adjustment_from_dst7(c8)
        yield (f"eq5 involution N={n}",
               float(np.max(np.abs(twice.realized - c7.realized))), 0.0)


def cmd_verify(args) -> int:
    failures = 0
    if args.check_file:
        matrix = matio.read_matrix(args.check_file)
        if matrix.shape[0] != matrix.shape[1]:
            print(f"FAIL orthonormality: matrix is not square {matrix.shape}")
            return EXIT_VERIFY
        err = orthonormality_error(matrix)
        ok = err < 1e-10
        print(f"{'PASS' if ok else 'FAIL'} orthonormality max|TT^T - I| = {err:.3e}")
        failures += not ok
        if args.kind:
            ref = build_transform(_parse_kind(args.kind), matrix.shape[0]).entries
            err = float(np.max(np.abs(matrix - ref)))
            ok = err < 1e-12
            print(f"{'PASS' if ok else 'FAIL'} closed-form match {args.kind} "
                  f"max-entry diff = {err:.3e}")
            failures += not ok
        return EXIT_VERIFY if failures else EXIT_OK

    if args.adjustment:
        adj = matio.read_adjustment(args.adjustment)
        err = orthonormality_error(adj.realized)
        ok = err < 1e-12
        print(f"{'PASS' if ok else 'FAIL'} adjustment orthogonality = {err:.3e}")
        failures += not ok
        v = pattern_violation(adj.pattern, adj.realized)
        ok = v < 1e-12
        print(f"{'PASS' if ok else 'FAIL'} pattern conformance {adj.pattern.label()} = {v:.3e}")
        failures += not ok
        return EXIT_VERIFY if failures else EXIT_OK

    sizes = _parse_sizes(args.sizes) if args.sizes else list(DEFAULT_VERIFY_SIZES)
    for name, err, threshold in _verify_checks(sizes, args.seed):
        ok = err <= threshold
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'} {name}: {err:.3e} (gate {threshold:g})")
    print(f"{failures} failures")
    return EXIT_VERIFY if failures else EXIT_OK


def cmd_apply(args) -> int:
    vectors = np.atleast_2d(matio.read_matrix(args.input))
    if args.adjustment:
        adj = matio.read_adjustment(args.adjustment)
        t = make_adjusted_transform(adj)
        out = inverse_adjusted(t, vectors) if args.inverse else forward_adjusted(t, vectors)
    elif args.kind:
        kind = _parse_kind(args.kind)
        tm = build_transform(kind, vectors.shape[1])
        mat = tm.entries.T if args.inverse else tm.entries
        out = vectors @ mat.T
    else:
        raise UsageError("apply needs --adjustment FILE or --kind KIND")
    matio.write_matrix(args.out if args.out else sys.stdout, out)
    return EXIT_OK


def _eval_models(spec: str, size: int):
    models = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        if token.startswith("ar1"):
            rho = float(token.partition(":")[2]) if ":" in token else 0.95
            models.append(residual_covariance_model(CovarianceKind.AR1, size, rho))
        elif token == "onesided":
            models.append(residual_covariance_model(CovarianceKind.ONE_SIDED_RESIDUAL, size))
        else:
            raise UsageError(f"unknown model {token!r} in --models")
    return models


def cmd_eval(args) -> int:
    size = _check_size(args.size)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    models = _eval_models(args.models, size)

    transforms = {k.value: build_transform(k, size).entries
                  for k in (TransformKind.DCT2, TransformKind.DST3,
                            TransformKind.DST7, TransformKind.DCT8)}
    adjustments = [matio.read_adjustment(p) for p in (args.adjustment or [])]
    for adj in adjustments:
        base = build_transform(adj.base, size).entries
        h = base @ adj.realized if adj.side is Side.PRE else adj.realized @ base
        transforms[f"approx-{adj.pattern.label()}-{adj.target.value}"] = h

    rows = []
    for model in models:
        name = model.kind.value if model.rho is None else f"ar1:{model.rho:g}"
        rows.append(["klt", name, size, coding_gain(klt(model), model)])
        for tname, mat in transforms.items():
            rows.append([tname, name, size, coding_gain(mat, model)])
    gains_path = out_dir / "coding_gains.csv"
    matio.write_csv(gains_path, ["transform", "model", "size", "gain_db"], rows)
    print(f"wrote {gains_path}")

    for adj in adjustments:
        base = build_transform(adj.base, size).entries
        h = base @ adj.realized if adj.side is Side.PRE else adj.realized @ base
        d = build_transform(adj.target, size).entries
        comp = basis_comparison(h, d, args.alpha)
        label = f"basis_{adj.pattern.label().replace(':', '')}_{adj.target.value}.csv"
        matio.write_csv(
            out_dir / label,
            ["row_index", "relative_l2_error", "absolute_l2_error"],
            [[i, float(comp.per_row_l2_error[i]), float(comp.per_row_abs_error[i])]
             for i in range(size)],
        )
        print(f"wrote {out_dir / label} (weighted total {comp.weighted_total:.6e})")
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = tuple(_parse_sizes(args.sizes))
    backends = [args.backend] if args.backend != "both" else ["compiled", "python"]
    all_rows = []
    for backend in backends:
        try:
            reports = benchmark.run_benchmark(
                sizes=sizes, samples=args.samples, seed=args.seed,
                min_time=args.min_time, backend=backend,
            )
        except ValueError as exc:
            print(f"skipping backend {backend}: {exc}")
            continue
        print(f"backend: {backend}")
        print(benchmark.report_table(reports))
        print()
        for r in reports:
            all_rows.append([backend, r.pipeline, r.size, r.direction,
                             r.coefficients_per_second, r.ratio_vs_dense,
                             r.samples, r.dispersion])
    if args.out:
        matio.write_csv(
            args.out,
            ["backend", "pipeline", "size", "direction",
             "coefficients_per_second", "ratio_vs_dense", "samples", "dispersion"],
            all_rows,
        )
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_export(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.figure == "fig2":
        size = _check_size(args.size)
        pattern = SparsityPattern.from_label(args.pattern, size)
        i = np.arange(size)[:, None]
        j = np.arange(size)[None, :]
        if pattern.kind.value == "band":
            mask = (np.abs(i - j) < pattern.taps).astype(float)
        elif pattern.kind.value == "subblock":
            mask = ((i < pattern.order) & (j < pattern.order)).astype(float)
        else:
            mask = np.ones((size, size))
        stem = f"fig2_{pattern.label().replace(':', '')}_N{size}"
        matio.write_pgm(out_dir / f"{stem}.pgm", mask)
        matio.write_matrix(out_dir / f"{stem}.txt", mask)
        print(f"wrote {out_dir / stem}.pgm and .txt")
        return EXIT_OK

    if args.figure == "fig3":
        size = _check_size(args.size)
        b = build_transform(TransformKind.DST3, size)
        d = build_transform(TransformKind.DST7, size)
        adj = optimize_adjustment(
            b, d, SparsityPattern.band(6, size), Side.PRE, _design_config(args))
        h = b.entries @ adj.realized
        rows = []
        for k in range(size):
            dev = float(np.max(np.abs(h[k] - d.entries[k])))
            for n in range(size):
                rows.append([k, n, float(h[k, n]), float(d.entries[k, n]), dev])
        path = out_dir / f"fig3_basis_N{size}.csv"
        matio.write_csv(
            path,
            ["frequency", "sample", "approx", "desired", "row_max_abs_deviation"],
            rows,
        )
        print(f"wrote {path}")
        return EXIT_OK

    # fig1: gray maps of discovered sparsity, bases x (target, side) cells
    size = _check_size(args.size)
    bases = [TransformKind.DCT2, TransformKind.DCT3, TransformKind.DST2, TransformKind.DST3]
    if args.base:
        bases = [_parse_kind(args.base)]
    targets = [TransformKind.DST7, TransformKind.DCT8]
    if args.target:
        targets = [_parse_kind(args.target)]
    sides = [Side.PRE, Side.POST]
    if args.side:
        sides = [_parse_side(args.side)]
    config = _design_config(args)
    for base in bases:
        bm = build_transform(base, size)
        for target in targets:
            dm = build_transform(target, size)
            for side in sides:
                res = discover_sparsity(bm, dm, side, config)
                name = f"fig1_{base.value}_{target.value}_{side.value}_N{size}.pgm"
                matio.write_pgm(out_dir / name, res.magnitude_map)
                print(f"wrote {out_dir / name} "
                      f"(weighted {res.weighted_term:.4e}, penalty {res.penalty_term:.4e})")
    return EXIT_OK


def _add_design_opts(p: argparse.ArgumentParser, restarts: int = 4) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=None,
                   help="weight decay rate (default ln(100)/N)")
    p.add_argument("--restarts", type=int, default=restarts)
    p.add_argument("--max-iterations", type=int, default=2000)
    p.add_argument("--tolerance", type=float, default=1e-10)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dctadjust",
        description="design and run low-complexity trigonometric transform adjustments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write an exact transform matrix")
    p.add_argument("--kind", required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("design", help="optimize an adjustment matrix")
    p.add_argument("--base", default="dst3")
    p.add_argument("--target", default="dst7")
    p.add_argument("--size", type=int, default=32)
    p.add_argument("--pattern", default="band:6", help="band:K | subblock:B | dense")
    p.add_argument("--side", default="pre")
    p.add_argument("--out", required=True)
    p.add_argument("--from-dst7", default=None,
                   help="derive a DCT-8 adjustment from a DST-7 adjustment file")
    _add_design_opts(p)
    p.set_defaults(fn=cmd_design)

    p = sub.add_parser("verify", help="run the identity and orthogonality suite")
    p.add_argument("--sizes", default=None, help="comma-separated, default 4,8,16,32,64")
    p.add_argument("--check-file", default=None, help="verify a matrix file")
    p.add_argument("--kind", default=None, help="expected kind of --check-file")
    p.add_argument("--adjustment", default=None, help="verify an adjustment file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("apply", help="apply a transform to a file of row vectors")
    p.add_argument("--input", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--kind", default=None)
    p.add_argument("--adjustment", default=None)
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(fn=cmd_apply)

    p = sub.add_parser("eval", help="coding-gain tables and basis comparisons")
    p.add_argument("--size", type=int, default=32)
    p.add_argument("--models", default="ar1:0.95,onesided")
    p.add_argument("--adjustment", action="append", default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("bench", help="throughput ratios vs the dense baseline")
    p.add_argument("--sizes", default="32,64")
    p.add_argument("--samples", type=int, default=31)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-time", type=float, default=0.01)
    p.add_argument("--backend", default=None,
                   choices=["compiled", "python", "both"])
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("export", help="figure data: gray maps, masks, basis CSVs")
    p.add_argument("--figure", required=True, choices=["fig1", "fig2", "fig3"])
    p.add_argument("--out", required=True)
    p.add_argument("--size", type=int, default=16)
    p.add_argument("--pattern", default="subblock:8")
    p.add_argument("--base", default=None)
    p.add_argument("--target", default=None)
    p.add_argument("--side", default=None)
    _add_design_opts(p, restarts=1)
    p.set_defaults(fn=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatrixFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DctAdjustError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
