"""Low-complexity orthogonal adjustments for trigonometric transforms.

Designs sparse orthogonal "adjustment" matrices that turn fast DCT-2 family
transforms into close approximations of DST-7 and DCT-8, executes the
resulting fast pipelines, and quantifies approximation quality, operation
counts, and throughput.
"""
from .design import (
    AdjustmentMatrix,
    DesignConfig,
    DiscoveryResult,
    GivensSchedule,
    PatternKind,
    PlaneRotation,
    Side,
    SparsityPattern,
    dct8_adjustment_from_dst7,
    default_alpha,
    discover_sparsity,
    givens_to_matrix,
    identity_adjustment,
    optimize_adjustment,
    pattern_schedule_template,
    pattern_violation,
    weighted_error,
)
from .evaluate import (
    BasisComparison,
    CovarianceKind,
    CovarianceModel,
    basis_comparison,
    coding_gain,
    klt,
    residual_covariance_model,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .opcount import OperationCount
from .pipeline import (
    AdjustedTransform,
    BasePath,
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
from .transforms import (
    SignFlipMatrices,
    TransformKind,
    TransformMatrix,
    build_transform,
    compose_pipeline,
    flip_to_dct8,
    orthonormality_error,
    sign_flip_matrices,
)

__version__ = "0.1.0"

__all__ = [
    "AdjustedTransform",
    "AdjustmentMatrix",
    "BasePath",
    "BasisComparison",
    "CovarianceKind",
    "CovarianceModel",
    "DesignConfig",
    "DiscoveryResult",
    "EncoderContext",
    "GivensSchedule",
    "KERNEL_BACKEND",
    "OperationCount",
    "PatternKind",
    "PlaneRotation",
    "Side",
    "SignFlipMatrices",
    "SparsityPattern",
    "TransformKind",
    "TransformMatrix",
    "apply_band",
    "apply_subblock",
    "basis_comparison",
    "build_transform",
    "coding_gain",
    "compose_pipeline",
    "dct8_adjustment_from_dst7",
    "default_alpha",
    "dense_matrix",
    "discover_sparsity",
    "fast_dct2",
    "fast_dst3_via_dct2",
    "fast_idct2",
    "fast_idst3",
    "flip_to_dct8",
    "forward_adjusted",
    "givens_to_matrix",
    "identity_adjustment",
    "inverse_adjusted",
    "klt",
    "make_adjusted_transform",
    "naive_encoder_eval",
    "op_count",
    "optimize_adjustment",
    "orthonormality_error",
    "pattern_schedule_template",
    "pattern_violation",
    "residual_covariance_model",
    "sign_flip_matrices",
    "simultaneous_encoder_eval",
    "weighted_error",
]
