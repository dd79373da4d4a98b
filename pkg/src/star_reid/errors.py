"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: configuration/shape problems exit 2,
data problems exit 3, numeric failures exit 4.
"""


class StarError(Exception):
    """Base class for all package errors."""


class ConfigError(StarError):
    """Invalid configuration: bad hyperparameters, mismatched topology, bad flags."""


class ShapeError(ConfigError):
    """Tensor shape mismatch between inputs that must agree."""


class EmptyInputError(ConfigError):
    """An operation received an empty sequence/tensor where at least one element is required."""


class DataError(StarError):
    """Dataset files missing, corrupt, or insufficient for the requested operation."""


class CheckpointError(DataError):
    """Checkpoint missing, corrupt, or incompatible with the requested model."""


class NumericError(StarError):
    """Non-finite values encountered where finite values are required."""
