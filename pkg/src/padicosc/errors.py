"""Exception types shared across the package."""


class PadicError(Exception):
    """Base class for every error raised by this library."""


class DomainError(PadicError):
    """Input outside the mathematical domain of an operation."""


class PrecisionExhaustedError(PadicError):
    """A result is indistinguishable from zero, or a decision cannot be
    made, at the precision carried by the inputs."""


class PoleError(DomainError):
    """Evaluation at a pole or indeterminate branch point."""


class ConfigError(DomainError):
    """Invalid run configuration."""


class InputFormatError(DomainError):
    """Malformed series or samples file."""
