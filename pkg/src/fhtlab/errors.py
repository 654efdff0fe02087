"""Exception types shared across the package."""


class FhtLabError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(FhtLabError):
    """Invalid run, instance, or experiment configuration."""


class ShapeError(FhtLabError):
    """Genotype does not match the instance (wrong length, not a permutation, ...)."""


class EnumerationLimitError(FhtLabError):
    """Exhaustive enumeration was requested above the configured cap."""


class ModelMismatchError(FhtLabError):
    """Instance violates a structural assumption of the bound model."""


class EstimationError(FhtLabError):
    """Estimates requested from insufficient or censored run data."""


class CorrelationUndefinedError(FhtLabError):
    """Pearson correlation of a constant sequence is undefined."""


class CensoredRunsError(FhtLabError):
    """A batch contained runs that hit the generation cap without finding an optimum."""

    def __init__(self, message: str, censored: list | None = None):
        super().__init__(message)
        self.censored = censored or []
