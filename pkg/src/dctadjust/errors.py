"""Exception types shared across the package."""


class DctAdjustError(Exception):
    """Base class for all package errors."""


class InvalidDimensionError(DctAdjustError, ValueError):
    """A transform size is zero, negative, or unsupported by a fast path."""


class ShapeError(DctAdjustError, ValueError):
    """Operands have incompatible shapes."""


class KindMismatchError(DctAdjustError, ValueError):
    """An operation received a transform or adjustment of the wrong kind."""


class PatternError(DctAdjustError, ValueError):
    """A sparsity pattern is invalid or does not match the operation."""


class InvalidScheduleError(DctAdjustError, ValueError):
    """A Givens schedule violates its structural invariants."""


class ConfigurationError(DctAdjustError, ValueError):
    """A pipeline or encoder context is missing required pieces."""


class ModelError(DctAdjustError, ValueError):
    """A covariance model is invalid (non-positive-definite, bad parameter)."""


class MatrixFormatError(DctAdjustError, ValueError):
    """A matrix or adjustment file cannot be parsed."""
