"""horokit: exact Lie-identity certificates, Burger kernels and modular-surface experiments."""

__version__ = "0.1.0"

from .errors import (
    HorokitError,
    ConfigurationError,
    ArgumentError,
    ResourceError,
    DomainError,
    ResolutionError,
    FitRejected,
    InvariantError,
)
